"""Length-3 free complexes: constructors, composition checks, duality and
minimization.

A Complex3 is 0 -> F3 -> F2 -> F1 -> F0 with differentials d3, d2, d1.
The base ring is local in spirit: a polynomial entry is a unit exactly when
its constant term is nonzero.
"""

from __future__ import annotations

from fractions import Fraction

from .ring import Polynomial, entry, poly_parse
from ._solve import NoLiftError, lift_through
from .tensor import (
    Element,
    FreeModule,
    LinearMap,
    SpaceExpr,
    basis_element,
    plain,
    space,
)


class Complex3:
    """A length-3 complex of free modules with chosen bases."""

    __slots__ = ("modules", "spaces", "d1", "d2", "d3")

    def __init__(self, modules, d1, d2, d3):
        self.modules = tuple(modules)            # F0, F1, F2, F3
        self.spaces = tuple(space(m) if isinstance(m, FreeModule) else m
                            for m in modules)
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3
        for i, d in ((1, d1), (2, d2), (3, d3)):
            if d.source != self.spaces[i] or d.target != self.spaces[i - 1]:
                raise ValueError("differential d%d has wrong spaces" % i)

    @property
    def format(self):
        return tuple(s.dim() for s in self.spaces)

    def space(self, i):
        return self.spaces[i]

    def module(self, i):
        m = self.modules[i]
        if isinstance(m, FreeModule):
            return m
        return m.factors[0].module

    def differential(self, i):
        return (None, self.d1, self.d2, self.d3)[i]

    def __repr__(self):
        return "Complex3(format %s)" % (self.format,)


def _to_poly(v):
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, str):
        return poly_parse(v)
    if isinstance(v, (int, Fraction)):
        return Polynomial.const(v)
    raise TypeError(v)


def _matrix(rows):
    return [[_to_poly(v) for v in row] for row in rows]


def _standard_modules(r0, r1, r2, r3):
    F0 = FreeModule("F0", ["u%d" % i for i in range(1, r0 + 1)])
    F1 = FreeModule("F1", ["e%d" % i for i in range(1, r1 + 1)])
    F2 = FreeModule("F2", ["f%d" % i for i in range(1, r2 + 1)])
    F3 = FreeModule("F3", ["g%d" % i for i in range(1, r3 + 1)])
    return F0, F1, F2, F3


def complex_from_matrices(d1_rows, d2_rows, d3_rows, modules=None):
    """Build a Complex3 from dense matrices (entries: Polynomial/int/str)."""
    d1m, d2m, d3m = _matrix(d1_rows), _matrix(d2_rows), _matrix(d3_rows)
    r0, r1 = len(d1m), len(d1m[0])
    r2 = len(d2m[0]) if d2m else 0
    r3 = len(d3m[0]) if d3m and d3m[0] else 0
    if modules is None:
        modules = _standard_modules(r0, r1, r2, r3)
    F0, F1, F2, F3 = modules
    s0, s1, s2, s3 = space(F0), space(F1), space(F2), space(F3)
    d1 = LinearMap.from_matrix(s1, s0, d1m)
    d2 = LinearMap.from_matrix(s2, s1, d2m)
    d3 = LinearMap.from_matrix(s3, s2, d3m)
    return Complex3((F0, F1, F2, F3), d1, d2, d3)


def _minor_of(rows, i, j):
    """x_{1i} x_{2j} - x_{1j} x_{2i} on a 2-row matrix (1-based columns)."""
    return rows[0][i - 1] * rows[1][j - 1] - rows[0][j - 1] * rows[1][i - 1]


def generic_2x4():
    return [[entry("x", 1, j) for j in range(1, 5)],
            [entry("x", 2, j) for j in range(1, 5)]]


def generic_2x3():
    return [[entry("x", 1, j) for j in range(1, 4)],
            [entry("x", 2, j) for j in range(1, 4)]]


def build_br_2442(M=None):
    """The Buchsbaum-Rim complex of a 2 x 4 matrix, format (2,4,4,2).

    d1 = M; d3 is the transposed layout of M; d2 is the alternating matrix
    of complementary 2 x 2 minors with the standard sign pattern.
    """
    if M is None:
        M = generic_2x4()
    M = _matrix(M)
    if len(M) != 2 or any(len(r) != 4 for r in M):
        raise ValueError("build_br_2442 needs a 2 x 4 matrix")

    def comp_minor(i, j):
        k, l = sorted(set(range(1, 5)) - {i, j})
        return _minor_of(M, k, l)

    signs = [
        [0, 1, -1, 1],
        [-1, 0, 1, -1],
        [1, -1, 0, 1],
        [-1, 1, -1, 0],
    ]
    d2_rows = [
        [comp_minor(*sorted((i, j))).scale(signs[i - 1][j - 1]) if i != j
         else Polynomial.zero()
         for j in range(1, 5)]
        for i in range(1, 5)
    ]
    d3_rows = [[M[0][i], M[1][i]] for i in range(4)]
    return complex_from_matrices(M, d2_rows, d3_rows)


def build_2541(A=None, y=None):
    """The hyperplane-section complex of format (2,5,4,1)."""
    if A is None:
        A = generic_2x3()
    if y is None:
        y = poly_parse("y")
    A = _matrix(A)
    y = _to_poly(y)
    if len(A) != 2 or any(len(r) != 3 for r in A):
        raise ValueError("build_2541 needs a 2 x 3 matrix")
    X12 = _minor_of(A, 1, 2)
    X13 = _minor_of(A, 1, 3)
    X23 = _minor_of(A, 2, 3)
    zero = Polynomial.zero()
    d3_rows = [[-X23], [X13], [-X12], [-y]]
    d2_rows = [
        [-y, zero, zero, X23],
        [zero, -y, zero, -X13],
        [zero, zero, -y, X12],
        [A[0][0], A[0][1], A[0][2], zero],
        [A[1][0], A[1][1], A[1][2], zero],
    ]
    d1_rows = [
        [A[0][0], A[0][1], A[0][2], y, zero],
        [A[1][0], A[1][1], A[1][2], zero, y],
    ]
    return complex_from_matrices(d1_rows, d2_rows, d3_rows)


SPLIT_FORMATS = ((2, 5, 5, 2), (2, 6, 5, 1))


def build_split_exact(fmt):
    """A split exact complex of the given format, with 0/1 differentials.

    d1 sends the last two F1 basis vectors to u1, u2; d2 matches f_i with
    e_i for i < n-1; d3 matches g_i with f_{i+n-2}.
    """
    fmt = tuple(fmt)
    if fmt not in SPLIT_FORMATS:
        raise ValueError("unsupported split exact format %r" % (fmt,))
    r0, n, r2, m = fmt
    assert r2 == n + m - 2
    d1_rows = [[0] * n for _ in range(2)]
    d1_rows[0][n - 2] = 1
    d1_rows[1][n - 1] = 1
    d2_rows = [[0] * r2 for _ in range(n)]
    for i in range(1, n - 1):
        d2_rows[i - 1][i - 1] = 1
    d3_rows = [[0] * m for _ in range(r2)]
    for i in range(1, m + 1):
        d3_rows[i + n - 3][i - 1] = 1
    return complex_from_matrices(d1_rows, d2_rows, d3_rows)


def _dense(d):
    return d.dense()


def _is_rational_matrix(rows):
    return all(p.is_zero() or list(p.terms) == [()] for row in rows for p in row)


def rational_rank(rows):
    """Rank of a matrix of constant polynomials over the rationals."""
    work = [[p.constant_term() for p in row] for row in rows]
    rank = 0
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = 1 / work[row][col]
        work[row] = [v * inv for v in work[row]]
        for r in range(nrows):
            if r != row and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[row])]
        row += 1
        rank += 1
    return rank


def check_complex(C):
    """Composition checks plus ranks when entries are rational constants."""
    report = {
        "d1d2_zero": C.d1.compose(C.d2).is_zero(),
        "d2d3_zero": C.d2.compose(C.d3).is_zero(),
        "format": C.format,
    }
    ranks = []
    for i in (1, 2, 3):
        rows = _dense(C.differential(i))
        if rows and rows[0] and _is_rational_matrix(rows):
            ranks.append(rational_rank(rows))
        elif not rows or not rows[0]:
            ranks.append(0)
        else:
            ranks.append("symbolic")
    report["ranks"] = tuple(ranks)
    return report


def dualize(C):
    """The reversed complex on the dual modules; an involution."""
    s0, s1, s2, s3 = C.spaces
    modules = (s3.dual_space(), s2.dual_space(), s1.dual_space(), s0.dual_space())
    return Complex3(
        modules,
        C.d3.transpose_dual(),
        C.d2.transpose_dual(),
        C.d1.transpose_dual(),
    )


def _divide_exact(p, unit):
    """Exact division p / unit for a unit polynomial; constant fast path."""
    if not unit.terms:
        raise ZeroDivisionError
    if list(unit.terms) == [()]:
        return p.scale(Fraction(1) / unit.constant_term())
    one = FreeModule("_q", ["q"])
    s = space(one)
    m = LinearMap.from_matrix(s, s, [[unit]])
    try:
        q = lift_through(m, basis_element(s, (1,), p))
    except NoLiftError:
        raise ValueError("entry %s is a unit but the quotient is not polynomial" % unit)
    return q.coords.get((1,), Polynomial.zero())


def minimize(C):
    """Split off unit entries of the differentials until none remain.

    Pivots are chosen deterministically: d1 first, then d2, then d3, and
    within a differential the smallest (target row, source column) unit.
    """
    mats = [_dense(C.differential(i)) for i in (1, 2, 3)]
    names = [list(C.module(i).basis_names) for i in range(4)]
    ids = [C.module(i).id for i in range(4)]

    def find_pivot():
        for i in (0, 1, 2):
            rows = mats[i]
            for t, row in enumerate(rows):
                for s, p in enumerate(row):
                    if p.constant_term():
                        return i, t, s
        return None

    while True:
        piv = find_pivot()
        if piv is None:
            break
        i, t, s = piv
        rows = mats[i]
        lam = rows[t][s]
        # Clear column s (other rows), a target basis change of F_{i}.
        for t2 in range(len(rows)):
            if t2 == t or rows[t2][s].is_zero():
                continue
            factor = _divide_exact(rows[t2][s], lam)
            rows[t2] = [a - factor * b for a, b in zip(rows[t2], rows[t])]
        # Clear row t (other columns), a source basis change of F_{i+1}.
        for s2 in range(len(rows[t])):
            if s2 == s or rows[t][s2].is_zero():
                continue
            factor = _divide_exact(rows[t][s2], lam)
            for t2 in range(len(rows)):
                rows[t2][s2] = rows[t2][s2] - factor * rows[t2][s]
        # Delete the split-off pair; the matching column of d_i's left
        # neighbour and row of its right neighbour vanish by composition.
        del names[i][t]
        del names[i + 1][s]
        mats[i] = [
            [p for s2, p in enumerate(row) if s2 != s]
            for t2, row in enumerate(rows) if t2 != t
        ]
        if i > 0:
            mats[i - 1] = [
                [p for s2, p in enumerate(row) if s2 != t]
                for row in mats[i - 1]
            ]
        if i < 2:
            mats[i + 1] = [p for t2, p in enumerate(mats[i + 1]) if t2 != s]

    modules = tuple(
        FreeModule(ids[k], names[k]) if names[k] else FreeModule(ids[k], [])
        for k in range(4)
    )
    spaces_ = tuple(space(m) for m in modules)

    def mk(idx):
        rows = mats[idx]
        cols = {}
        for t, row in enumerate(rows):
            for s, p in enumerate(row):
                if not p.is_zero():
                    cols.setdefault((s + 1,), {})[(t + 1,)] = p
        return LinearMap(spaces_[idx + 1], spaces_[idx], cols)

    return Complex3(modules, mk(0), mk(1), mk(2))


def _constant_matrix(m):
    return [[p.constant_term() for p in row] for row in m.dense()]


def _det(rows):
    n = len(rows)
    work = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] * inv
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return det


def perfect_2442_check(C, maps):
    """Whether the three decisive structure maps are invertible mod units.

    maps must provide LinearMaps under keys "w31", "w11" and "w2_2_1"; each
    is reduced to its constant-term matrix and tested for invertibility.
    """
    if C.format != (2, 4, 4, 2):
        raise ValueError("perfect_2442_check needs format (2,4,4,2)")
    for key in ("w31", "w11", "w2_2_1"):
        m = maps[key] if isinstance(maps, dict) else getattr(maps, key)
        rows = _constant_matrix(m)
        if len(rows) != len(rows[0]):
            return False
        if _det(rows) == 0:
            return False
    return True
