"""Exact linear solving over the rationals, and lifting of elements through
linear maps with polynomial entries.

Lifting d(s) = t is a linear problem in the polynomial coefficients of s.
Two strategies are used:

- constant path: when every entry of d is a rational constant, the system
  splits monomial by monomial into plain rational systems sharing one matrix;
- ansatz path: candidate monomials for each coordinate of s are generated by
  dividing target monomials by entry monomials of d (with a degree-bounded
  exhaustive fallback), then the unknown rational coefficients are solved by
  Gaussian elimination.

Underdetermined systems are resolved deterministically: unknowns are ordered,
reduced row echelon form is computed, and free unknowns are set to zero.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .ring import Polynomial, _mul_monomials, _monomial_sort_key
from .tensor import Element, LinearMap


class NoLiftError(Exception):
    """The target is not in the image of the map on the candidate space."""


class BoundTooSmallError(Exception):
    """The fallback monomial enumeration exceeded its size cap."""


FALLBACK_CAP = 20000


def rref_solve(rows, rhs, ncols):
    """Solve a sparse rational system; free unknowns are set to zero.

    rows: list of dicts column->Fraction; rhs: list of Fractions.
    Returns a dict column->Fraction for the nonzero unknowns, or None when
    the system is inconsistent.
    """
    work = [(dict(r), Fraction(b)) for r, b in zip(rows, rhs)]
    pivots = {}
    for col in range(ncols):
        pivot_row = None
        for idx, (r, _) in enumerate(work):
            if idx in pivots.values():
                continue
            if r.get(col):
                pivot_row = idx
                break
        if pivot_row is None:
            continue
        r, b = work[pivot_row]
        inv = 1 / r[col]
        if inv != 1:
            r = {c: v * inv for c, v in r.items()}
            b = b * inv
            work[pivot_row] = (r, b)
        for idx, (r2, b2) in enumerate(work):
            if idx == pivot_row:
                continue
            factor = r2.get(col)
            if not factor:
                continue
            new = dict(r2)
            for c, v in r.items():
                s = new.get(c, Fraction(0)) - factor * v
                if s:
                    new[c] = s
                else:
                    new.pop(c, None)
            work[idx] = (new, b2 - factor * b)
        pivots[col] = pivot_row
    for r, b in work:
        if not r and b:
            return None
    solution = {}
    for col, idx in pivots.items():
        _, b = work[idx]
        if b:
            solution[col] = b
    return solution


def solve_multi_rhs(matrix_cols, unknown_order, rhs_list):
    """Solve one rational matrix against several right-hand sides.

    matrix_cols: dict unknown -> dict(equation_key -> Fraction).
    rhs_list: list of dicts equation_key -> Fraction.
    Returns a list of solutions (dict unknown -> Fraction) or raises
    NoLiftError naming the first inconsistent right-hand side.
    """
    eq_keys = {}
    for col in matrix_cols.values():
        for k in col:
            eq_keys.setdefault(k, len(eq_keys))
    for rhs in rhs_list:
        for k in rhs:
            eq_keys.setdefault(k, len(eq_keys))
    nrows = len(eq_keys)
    col_index = {u: i for i, u in enumerate(unknown_order)}
    rows = [dict() for _ in range(nrows)]
    for u, col in matrix_cols.items():
        j = col_index[u]
        for k, v in col.items():
            rows[eq_keys[k]][j] = v
    out = []
    for rhs in rhs_list:
        b = [Fraction(0)] * nrows
        for k, v in rhs.items():
            b[eq_keys[k]] = Fraction(v)
        sol = rref_solve(rows, b, len(unknown_order))
        if sol is None:
            raise NoLiftError("inconsistent linear system")
        out.append({unknown_order[j]: v for j, v in sol.items()})
    return out


def _monomial_divide(m, d):
    """m / d as a monomial, or None when not divisible."""
    rem = dict(m)
    for vid, e in d:
        have = rem.get(vid, 0)
        if have < e:
            return None
        if have == e:
            del rem[vid]
        else:
            rem[vid] = have - e
    return tuple(sorted(rem.items()))


def _is_constant_map(d):
    for col in d.cols.values():
        for p in col.values():
            if any(m != () for m in p.terms):
                return False
    return True


def _lift_constant(d, target):
    source_words = sorted(d.source.words())
    matrix_cols = {}
    for sw in source_words:
        col = d.cols.get(sw)
        if col:
            matrix_cols[sw] = {tw: p.constant_term() for tw, p in col.items()}
        else:
            matrix_cols[sw] = {}
    monomials = set()
    for p in target.coords.values():
        monomials.update(p.terms)
    monomials = sorted(monomials, key=_monomial_sort_key)
    rhs_list = []
    for m in monomials:
        rhs_list.append(
            {tw: p.terms[m] for tw, p in target.coords.items() if m in p.terms}
        )
    sols = solve_multi_rhs(matrix_cols, source_words, rhs_list)
    coords = {}
    for m, sol in zip(monomials, sols):
        for sw, c in sol.items():
            coords[sw] = coords.get(sw, Polynomial.zero()) + Polynomial({m: c})
    return Element(d.source, {w: p for w, p in coords.items() if not p.is_zero()})


def _division_candidates(d, target):
    """Candidate (source word, monomial) unknowns generated by division."""
    target_monomials = set()
    for p in target.coords.values():
        target_monomials.update(p.terms)
    unknowns = []
    seen = set()
    for sw in sorted(d.cols):
        entry_monomials = set()
        for p in d.cols[sw].values():
            entry_monomials.update(p.terms)
        for mt in target_monomials:
            for md in entry_monomials:
                q = _monomial_divide(mt, md)
                if q is not None and (sw, q) not in seen:
                    seen.add((sw, q))
                    unknowns.append((sw, q))
    unknowns.sort(key=lambda u: (u[0], _monomial_sort_key(u[1])))
    return unknowns


def _fallback_candidates(d, target, degree_bound):
    """All monomials up to degree_bound in the variables involved."""
    vids = set()
    for col in d.cols.values():
        for p in col.values():
            for m in p.terms:
                for vid, _ in m:
                    vids.add(vid)
    for p in target.coords.values():
        for m in p.terms:
            for vid, _ in m:
                vids.add(vid)
    vids = sorted(vids)
    monomials = [()]
    for deg in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(vids, deg):
            m = {}
            for vid in combo:
                m[vid] = m.get(vid, 0) + 1
            monomials.append(tuple(sorted(m.items())))
            if len(monomials) * max(len(d.cols), 1) > FALLBACK_CAP:
                raise BoundTooSmallError(
                    "fallback enumeration exceeded %d unknowns" % FALLBACK_CAP
                )
    unknowns = []
    for sw in sorted(d.cols):
        for m in monomials:
            unknowns.append((sw, m))
    return unknowns


def _lift_with_unknowns(d, target, unknowns):
    matrix_cols = {}
    for u in unknowns:
        sw, mono = u
        col = {}
        for tw, p in d.cols[sw].items():
            for md, cd in p.terms.items():
                k = (tw, _mul_monomials(mono, md))
                s = col.get(k, Fraction(0)) + cd
                if s:
                    col[k] = s
                else:
                    col.pop(k, None)
        matrix_cols[u] = col
    rhs = {}
    for tw, p in target.coords.items():
        for m, c in p.terms.items():
            rhs[(tw, m)] = c
    (sol,) = solve_multi_rhs(matrix_cols, unknowns, [rhs])
    coords = {}
    for (sw, mono), c in sol.items():
        coords[sw] = coords.get(sw, Polynomial.zero()) + Polynomial({mono: c})
    return Element(d.source, {w: p for w, p in coords.items() if not p.is_zero()})


def default_degree_bound(d, target):
    td = max((p.degree() for p in target.coords.values()), default=0)
    dd = 0
    for col in d.cols.values():
        for p in col.values():
            dd = max(dd, p.degree())
    return max(td, 0) + max(dd, 0) + 2


def lift_through(d, target, degree_bound=None):
    """Find s with d(s) = target; deterministic minimal solution.

    Raises NoLiftError when no preimage exists on the candidate space, and
    BoundTooSmallError when the exhaustive fallback would be too large.
    """
    if target.space != d.target:
        raise ValueError("lift_through: target lies in the wrong space")
    if target.is_zero():
        return Element.zero(d.source)
    if _is_constant_map(d):
        return _lift_constant(d, target)
    try:
        return _lift_with_unknowns(d, target, _division_candidates(d, target))
    except NoLiftError:
        pass
    if degree_bound is None:
        degree_bound = default_degree_bound(d, target)
    return _lift_with_unknowns(d, target, _fallback_candidates(d, target, degree_bound))


def solve_poly_combination(columns, target, degree_bound=None):
    """Find polynomials c_k with sum_k c_k * columns[k] = target.

    columns: dict key -> dict(coord -> Polynomial); target: dict
    coord -> Polynomial.  The unknown polynomial coefficients are found by
    the same two-stage ansatz as lifting: division candidates first, then a
    bounded exhaustive enumeration.  Returns dict key -> Polynomial and
    raises NoLiftError when no combination exists on the candidate space.
    """
    keys = sorted(columns)

    def attempt(unknowns):
        matrix_cols = {}
        for key, mono in unknowns:
            col = {}
            for coord, p in columns[key].items():
                for md, cd in p.terms.items():
                    k2 = (coord, _mul_monomials(mono, md))
                    s = col.get(k2, Fraction(0)) + cd
                    if s:
                        col[k2] = s
                    else:
                        col.pop(k2, None)
            matrix_cols[(key, mono)] = col
        rhs = {}
        for coord, p in target.items():
            for m, c in p.terms.items():
                rhs[(coord, m)] = c
        (sol,) = solve_multi_rhs(matrix_cols, unknowns, [rhs])
        out = {}
        for (key, mono), c in sol.items():
            out[key] = out.get(key, Polynomial.zero()) + Polynomial({mono: c})
        return {k: p for k, p in out.items() if not p.is_zero()}

    target_monomials = set()
    for p in target.values():
        target_monomials.update(p.terms)
    unknowns = []
    for key in keys:
        entry_monomials = set()
        for p in columns[key].values():
            entry_monomials.update(p.terms)
        cands = {()}
        for mt in target_monomials:
            for md in entry_monomials:
                q = _monomial_divide(mt, md)
                if q is not None:
                    cands.add(q)
        for m in sorted(cands, key=_monomial_sort_key):
            unknowns.append((key, m))
    try:
        return attempt(unknowns)
    except NoLiftError:
        pass
    vids = set()
    for d in list(columns.values()) + [target]:
        for p in d.values():
            for m in p.terms:
                for vid, _ in m:
                    vids.add(vid)
    if degree_bound is None:
        tdeg = max((p.degree() for p in target.values()), default=0)
        degree_bound = tdeg + 1
    monomials = [()]
    for deg in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(sorted(vids), deg):
            m = {}
            for vid in combo:
                m[vid] = m.get(vid, 0) + 1
            monomials.append(tuple(sorted(m.items())))
            if len(monomials) * max(len(keys), 1) > FALLBACK_CAP:
                raise BoundTooSmallError(
                    "combination enumeration exceeded %d unknowns" % FALLBACK_CAP
                )
    return attempt([(key, m) for key in keys for m in monomials])


def lift_map_through(d, m, degree_bound=None):
    """Lift every column of m through d: returns ell with d o ell = m."""
    if m.target != d.target:
        raise ValueError("lift_map_through: target spaces differ")
    cols = {}
    for sw, col in m.cols.items():
        s = lift_through(d, Element(d.target, dict(col)), degree_bound)
        if s.coords:
            cols[sw] = dict(s.coords)
    return LinearMap(m.source, d.source, cols)
