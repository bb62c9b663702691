"""Buchsbaum-Rim linkage of a length-3 resolution.

Given a resolution A with a rank-2 cokernel, a choice of four columns of
its first differential seeds a Buchsbaum-Rim complex B.  The dual of the
mapping cone of the comparison map A* -> B resolves the linked module.
This module builds the comparison, the cone, the reduced (bookkeeping)
minimization, the transferred structure maps of the linked complex, and
the linkage-class classifier.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .complexes import (
    Complex3,
    build_br_2442,
    check_complex,
    complex_from_matrices,
    minimize,
)
from .ring import Polynomial
from .structmaps import (
    StructureMaps,
    comparison_map,
    compute_structure_maps,
    map_spaces,
    q_image,
)
from .tensor import FreeModule, basis_element


class LinkVerificationError(RuntimeError):
    """The comparison maps fail their chain conditions."""


class LinkageData:
    """Everything produced by one Buchsbaum-Rim link."""

    __slots__ = ("source", "cols", "maps", "br", "alpha", "beta", "chi",
                 "cone", "minimized", "warnings")

    def __init__(self, source, cols, maps, br, alpha, beta, chi,
                 cone=None, minimized=None, warnings=()):
        self.source = source
        self.cols = tuple(cols)
        self.maps = maps
        self.br = br
        self.alpha = alpha        # (alpha1, alpha2, alpha3) dense matrices
        self.beta = beta          # (beta1, beta2, beta3) dense matrices
        self.chi = chi            # 2 x r3 matrix of beta3
        self.cone = cone
        self.minimized = minimized
        self.warnings = list(warnings)


# -- dense matrix helpers ------------------------------------------------


def _zeros(r, c):
    return [[Polynomial.zero() for _ in range(c)] for _ in range(r)]


def _matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = _zeros(rows, cols)
    for i in range(rows):
        for k in range(inner):
            if a[i][k].is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out

def _transpose(m):
    return [list(row) for row in zip(*m)] if m else []


def _mat_eq(a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        if len(ra) != len(rb):
            return False
        for pa, pb in zip(ra, rb):
            if not (pa - pb).is_zero():
                return False
    return True


def _rational_inverse(m):
    n = len(m)
    work = [[Fraction(v) for v in row] + [Fraction(int(i == j))
            for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


# -- column operations for non-minimal alpha choices ---------------------


def column_operation(A, combos):
    """Change basis of the presentation columns so that the four given
    linear combinations become the first four columns.

    combos is a list of four lists of (column index, rational coefficient).
    Returns the transformed Complex3.
    """
    r1 = A.module(1).rank
    if len(combos) != 4:
        raise ValueError("need exactly four column combinations")
    ucols = []
    for combo in combos:
        v = [Fraction(0)] * r1
        for k, c in combo:
            v[k - 1] += Fraction(c)
        ucols.append(v)
    # Complete to an invertible matrix with standard basis columns.
    for k in range(r1):
        if len(ucols) == r1:
            break
        cand = [Fraction(int(i == k)) for i in range(r1)]
        trial = ucols + [cand]
        if _frac_rank(trial) == len(trial):
            ucols.append(cand)
    if len(ucols) != r1 or _frac_rank(ucols) != r1:
        raise ValueError("column combinations are not extendable to a basis")
    U = _transpose([[v for v in col] for col in ucols])
    Uinv = _rational_inverse(U)
    a1 = A.d1.dense()
    a2 = A.d2.dense()
    a3 = A.d3.dense()
    Up = [[Polynomial.const(v) for v in row] for row in U]
    Uinvp = [[Polynomial.const(v) for v in row] for row in Uinv]
    a1p = _matmul(a1, Up)
    a2p = _matmul(Uinvp, a2)
    return complex_from_matrices(
        a1p, a2p, a3,
        modules=tuple(A.module(i) for i in range(4)))


def _frac_rank(rows):
    work = [list(r) for r in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(work)) if work[r][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = 1 / work[row][col]
        work[row] = [v * inv for v in work[row]]
        for r in range(len(work)):
            if r != row and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[row])]
        row += 1
        rank += 1
    return rank


# -- the comparison map --------------------------------------------------


def _triple(maps, a, b, c):
    """w31 column as a dict over f indices."""
    dom, _ = map_spaces(maps.complex, "w31")
    el = basis_element(dom, ((a, b, c),))
    if el.is_zero():
        return {}
    return {h: p for (h,), p in maps["w31"].apply(el).coords.items()}


def build_comparison(A, cols, maps=None):
    """The chain comparison between A* and the Buchsbaum-Rim complex on
    the chosen columns, expressed through w31 and w11 of A."""
    cols = tuple(cols)
    if len(set(cols)) != 4 or cols != tuple(sorted(cols)):
        raise ValueError("cols must be four distinct increasing indices")
    r1 = A.module(1).rank
    r2 = A.module(2).rank
    r3 = A.module(3).rank
    if maps is None:
        maps = compute_structure_maps(A, ids=["w31", "w21", "w11"])
    a1 = A.d1.dense()
    a2 = A.d2.dense()
    a3 = A.d3.dense()
    b1 = [[a1[i][c - 1] for c in cols] for i in range(2)]
    br = build_br_2442(b1)
    b2 = br.d2.dense()
    b3 = br.d3.dense()

    alpha1 = _zeros(r1, 4)
    for j, c in enumerate(cols):
        alpha1[c - 1][j] = Polynomial.const(1)
    beta1 = _zeros(4, r1)
    for j, c in enumerate(cols):
        beta1[j][c - 1] = Polynomial.const(1)

    # alpha2(t_j) carries the triple product on the complementary columns;
    # beta2 is its dual transported by the self-duality of B.
    alpha2 = _zeros(r2, 4)
    beta2 = _zeros(4, r2)
    for j in range(4):
        rest = tuple(c for i, c in enumerate(cols) if i != j)
        trip = _triple(maps, *rest)
        for h, p in trip.items():
            alpha2[h - 1][j] = p.scale((-1) ** (j + 1))
            beta2[j][h - 1] = p.scale((-1) ** (j + 1))

    dom11, _ = map_spaces(A, "w11")
    w11_val = maps["w11"].apply(basis_element(dom11, (cols,)))
    chi = _zeros(2, r3)
    for (j, t), p in w11_val.coords.items():
        chi[j - 1][t - 1] = p
    alpha3 = _transpose(chi)
    beta3 = chi

    if not _mat_eq(_matmul(a2, alpha2), _matmul(alpha1, b2)):
        raise LinkVerificationError("a2 . alpha2 != alpha1 . b2")
    if not _mat_eq(_matmul(a3, alpha3), _matmul(alpha2, b3)):
        raise LinkVerificationError("a3 . alpha3 != alpha2 . b3")

    return LinkageData(
        A, cols, maps, br,
        (alpha1, alpha2, alpha3), (beta1, beta2, beta3), chi,
        warnings=["height of I_2(b1) is not verified"],
    )


# -- the mapping cone and its reductions ---------------------------------


def _cone_modules(A, cols, reduced):
    r1, r2, r3 = (A.module(i).rank for i in (1, 2, 3))
    D0 = FreeModule("D0", ["u1", "u2"])
    d1_names = ["gam%d" % t for t in range(1, r3 + 1)] + \
        ["s%d" % j for j in range(1, 5)]
    D1 = FreeModule("D1", d1_names)
    if reduced:
        D2 = FreeModule("D2", ["phi%d" % h for h in range(1, r2 + 1)])
        rem = [k for k in range(1, r1 + 1) if k not in cols]
        D3 = FreeModule("D3", ["eps%d" % k for k in rem])
    else:
        D2 = FreeModule("D2", ["phi%d" % h for h in range(1, r2 + 1)]
                        + ["t%d" % j for j in range(1, 5)])
        D3 = FreeModule("D3", ["eps%d" % k for k in range(1, r1 + 1)])
    return D0, D1, D2, D3


def mapping_cone(L):
    """The dual mapping cone of the comparison, before any minimization."""
    A = L.source
    a1 = A.d1.dense()
    a2 = A.d2.dense()
    a3 = A.d3.dense()
    b1 = L.br.d1.dense()
    b2 = L.br.d2.dense()
    beta1, beta2, _ = L.beta
    r1, r2, r3 = (A.module(i).rank for i in (1, 2, 3))

    d1 = [L.chi[i] + b1[i] for i in range(2)]
    a3t = _transpose(a3)
    d2 = []
    for t in range(r3):
        d2.append(a3t[t] + [Polynomial.zero()] * 4)
    for j in range(4):
        d2.append([p.scale(-1) for p in beta2[j]]
                  + [p.scale(-1) for p in b2[j]])
    a2t = _transpose(a2)
    d3 = [a2t[h] for h in range(r2)] + [beta1[j] for j in range(4)]

    D = complex_from_matrices(
        d1, d2, d3, modules=_cone_modules(A, L.cols, reduced=False))
    rep = check_complex(D)
    if not (rep["d1d2_zero"] and rep["d2d3_zero"]):
        raise LinkVerificationError("mapping cone composition is nonzero")
    return D


def reduced_cone(L):
    """The cone after removing the split pairs the comparison exhibits:
    the four chosen dual generators against their unit images."""
    A = L.source
    a2 = A.d2.dense()
    a3 = A.d3.dense()
    b1 = L.br.d1.dense()
    beta2 = L.beta[1]
    r1, r2, r3 = (A.module(i).rank for i in (1, 2, 3))
    rem = [k for k in range(1, r1 + 1) if k not in L.cols]

    d1 = [L.chi[i] + b1[i] for i in range(2)]
    a3t = _transpose(a3)
    d2 = [a3t[t] for t in range(r3)] + \
        [[p.scale(-1) for p in beta2[j]] for j in range(4)]
    d3 = [[a2[k - 1][h] for k in rem] for h in range(r2)]

    D = complex_from_matrices(
        d1, d2, d3, modules=_cone_modules(A, L.cols, reduced=True))
    rep = check_complex(D)
    if not (rep["d1d2_zero"] and rep["d2d3_zero"]):
        raise LinkVerificationError("reduced cone composition is nonzero")
    return D


def minimal_br_link(A, cols=(1, 2, 3, 4), maps=None, alpha=None):
    """Full link pipeline on four columns of the presentation.

    alpha, when given, is a list of four column combinations (lists of
    (index, coefficient)); the complex is rewritten so the combinations
    become the first four columns before linking.
    """
    if alpha is not None:
        A = column_operation(A, alpha)
        cols = (1, 2, 3, 4)
        maps = None
    L = build_comparison(A, cols, maps)
    L.cone = mapping_cone(L)
    L.minimized = reduced_cone(L)
    total_a = sum(A.format)
    total_d = sum(L.minimized.format)
    if total_d > total_a:
        raise LinkVerificationError("link increased the total Betti number")
    return L


# -- transferred structure maps of the linked complex --------------------


def _aval(maps, mid, word, key):
    dom, _ = map_spaces(maps.complex, mid)
    try:
        el = basis_element(dom, word)
    except (KeyError, ValueError):
        return Polynomial.zero()
    if el.is_zero():
        return Polynomial.zero()
    return maps[mid].apply(el).coords.get(key, Polynomial.zero())


def predicted_linked_maps(L):
    """Structure maps of the reduced link predicted from those of the
    source complex, each verified against its defining cycle on the link.

    Returns (StructureMaps for the link, verification report).  The tables
    are partial: only the columns the transfer formulas determine are
    present, and only those columns are verified.  Transfer columns whose
    formula needs a source map that could not be computed are skipped and
    listed in the report under "skipped".
    """
    A = L.source
    maps = L.maps
    skipped = []

    def have(mid, tag):
        if mid in maps.table:
            return True
        skipped.append((tag, mid))
        return False
    D = L.minimized
    cols = L.cols
    r1, r2, r3 = (A.module(i).rank for i in (1, 2, 3))
    rem = [k for k in range(1, r1 + 1) if k not in cols]
    a1 = A.d1.dense()
    a2 = A.d2.dense()

    def x(j, k):
        return a1[j - 1][k - 1]

    def y(k, h):
        return a2[k - 1][h - 1]

    n_d = r3 + 4          # rank of the link's presentation module

    def s(j):
        return r3 + j     # index of s_j inside the link basis

    def kidx(k):
        return rem.index(k) + 1

    table = {}

    # Triple products of the link.
    w31_cols = {}
    for word in map_spaces(D, "w31")[0].words():
        (idx,) = word
        gs = [i for i in idx if i <= r3]
        ss = [cols[i - r3 - 1] for i in idx if i > r3]
        col = {}
        if len(gs) == 0:
            a, b, c = (i - r3 for i in idx)
            d = 10 - a - b - c
            sign = (-1) ** (a + b + c)
            for h in range(1, r2 + 1):
                col[(h,)] = y(cols[d - 1], h).scale(sign)
        elif len(gs) == 1:
            t = gs[0]
            for h in range(1, r2 + 1):
                col[(h,)] = _aval(maps, "w21", ((ss[0], ss[1]), h), (t,))
        elif len(gs) == 2 and r3 == 2 and have("w2_2_1", ("w31", word)):
            for h in range(1, r2 + 1):
                col[(h,)] = _aval(maps, "w2_2_1", (cols, ss[0], h),
                                  ((1, 2),)).scale(-1)
        else:
            continue
        w31_cols[word] = {k: p for k, p in col.items() if not p.is_zero()}
    src, tgt = map_spaces(D, "w31")
    from .tensor import LinearMap
    table["w31"] = LinearMap(src, tgt, w31_cols)

    # Degree-one maps into the dual generators.
    w11_cols = {}
    for word in map_spaces(D, "w11")[0].words():
        (idx,) = word
        gs = [i for i in idx if i <= r3]
        ss = [cols[i - r3 - 1] for i in idx if i > r3]
        col = {}
        if len(gs) == 0:
            for j in (1, 2):
                for k in rem:
                    col[(j, kidx(k))] = x(j, k).scale(-1)
        elif len(gs) == 1:
            t = gs[0]
            for j in (1, 2):
                for k in rem:
                    col[(j, kidx(k))] = _aval(
                        maps, "w11", ((ss[0], ss[1], ss[2], k),), (j, t))
        elif len(gs) == 2 and r3 == 2 and have("w1_2_1", ("w11", word)):
            for j in (1, 2):
                for k in rem:
                    v = _aval(maps, "w1_2_1", (cols + (k,), (ss[0], ss[1])),
                              (j, (1, 2)))
                    col[(j, kidx(k))] = v
        else:
            continue
        w11_cols[word] = {k: p for k, p in col.items() if not p.is_zero()}
    src, tgt = map_spaces(D, "w11")
    table["w11"] = LinearMap(src, tgt, w11_cols)

    verify_ids = ["w31", "w11"]

    if D.format[1] == 5:
        # Second-graded map on the repeated-index shape.
        full = tuple(range(1, 6))
        w321_cols = {}
        for xx in range(1, 6):
            col = {}
            if xx <= r3:
                if not have("w2_2_2", ("w3_2_1", (full, xx))):
                    continue
                for k in rem:
                    for h in range(1, r2 + 1):
                        col[(h, kidx(k))] = _aval(
                            maps, "w2_2_2", (cols + (k,), h),
                            ((xx, xx),)).scale((-1) ** xx)
            else:
                c = cols[xx - r3 - 1]
                for k in rem:
                    for h in range(1, r2 + 1):
                        col[(h, kidx(k))] = _aval(
                            maps, "w21", ((k, c), h),
                            (1,)).scale((-1) ** (xx + 1))
            w321_cols[(full, xx)] = {
                k: p for k, p in col.items() if not p.is_zero()}
        src, tgt = map_spaces(D, "w3_2_1")
        table["w3_2_1"] = LinearMap(src, tgt, w321_cols)
        verify_ids.append("w3_2_1")

        if r3 == 1 and len(rem) == 2 and have("w1_2_2", ("w1_2_1", None)):
            w121_cols = {}
            for a in range(1, 5):
                col = {}
                for j in (1, 2):
                    v = _aval(maps, "w1_2_2", (tuple(range(1, 7)), cols[a - 1]),
                              (j, (1, 1)))
                    col[(j, (1, 2))] = v.scale(-1)
                w121_cols[(full, (1, s(a)))] = {
                    k: p for k, p in col.items() if not p.is_zero()}
            src, tgt = map_spaces(D, "w1_2_1")
            table["w1_2_1"] = LinearMap(src, tgt, w121_cols)
            verify_ids.append("w1_2_1")

    if D.format[1] == 6 and r3 == 2 and have("w2_2_1", ("w3_2_2", None)):
        full = tuple(range(1, 7))
        col = {}
        for k in rem:
            for h in range(1, r2 + 1):
                col[(h, kidx(k))] = _aval(
                    maps, "w2_2_1", (cols, k, h), ((1, 2),))
        src, tgt = map_spaces(D, "w3_2_2")
        table["w3_2_2"] = LinearMap(src, tgt, {
            (full,): {k: p for k, p in col.items() if not p.is_zero()}})
        verify_ids.append("w3_2_2")

    if D.format[1] == 6 and r3 == 2 and len(rem) == 1 \
            and have("w1_3", ("w1_2_2", None)):
            full = tuple(range(1, 7))
            w122_cols = {}
            for t in (1, 2):
                col = {}
                for j in (1, 2):
                    v = _aval(maps, "w1_3",
                              (tuple(range(1, 6)), tuple(range(1, 6))),
                              (j, (1, 2), t))
                    col[(j, (1, 1))] = v.scale(-2)
                w122_cols[(full, t)] = {
                    k: p for k, p in col.items() if not p.is_zero()}
            src, tgt = map_spaces(D, "w1_2_2")
            table["w1_2_2"] = LinearMap(src, tgt, w122_cols)
            verify_ids.append("w1_2_2")

    pred = StructureMaps(D, table)
    report = {
        "failures": verify_transfer(pred, verify_ids),
        "skipped": skipped,
        "verified_ids": verify_ids,
    }
    return pred, report


def verify_transfer(pred, ids=None):
    """Check the defining cycle of each predicted column on the link.

    Returns a list of (map id, word) failures; empty means every
    transferred column satisfies its defining equation.
    """
    D = pred.complex
    failures = []
    for mid in (ids or pred.ids()):
        m = pred[mid]
        cmp_map = comparison_map(D, mid)
        for word in m.cols:
            img = cmp_map.apply(m.apply(basis_element(m.source, word)))
            q = q_image(D, pred, mid, word)
            if not (img - q).is_zero():
                failures.append((mid, word))
    return failures


# -- classifier and cyclic shapes ----------------------------------------


_WITNESS_ORDER = {
    (2, 5, 5, 2): ("w11", "w1_2_1", "w1_3"),
    (2, 6, 5, 1): ("w11", "w1_2_2"),
}


def classify_br_class(A, maps=None, rng_seed=0):
    """Decide membership in the linkage class of a Buchsbaum-Rim complex.

    The decision is positive exactly when some degree-one-representation
    map has an entry that is a unit (nonzero constant term).  A column
    choice for the next link is suggested from the witness, falling back
    to seeded random column mixes kept away from degenerate minors.
    """
    fmt = A.format
    if fmt not in _WITNESS_ORDER:
        raise ValueError("classifier needs format (2,5,5,2) or (2,6,5,1)")
    if maps is None:
        maps = compute_structure_maps(A)
    witness = None
    witness_word = None
    for mid in _WITNESS_ORDER[fmt]:
        if mid not in maps.table:
            continue
        for word in sorted(maps[mid].cols):
            for key in sorted(maps[mid].cols[word]):
                if maps[mid].cols[word][key].constant_term():
                    witness = mid
                    witness_word = (word, key)
                    break
            if witness:
                break
        if witness:
            break
    decision = {
        "format": fmt,
        "in_class": witness is not None,
        "witness": witness,
        "witness_word": witness_word,
        "suggested_link": None,
    }
    if witness is None:
        return decision
    if witness == "w11":
        decision["suggested_link"] = {"cols": list(witness_word[0][0])}
        return decision
    decision["suggested_link"] = _general_position_link(A, rng_seed)
    return decision


def _general_position_link(A, rng_seed, tries=50):
    """Seeded random column mixes avoiding symbolically degenerate minors."""
    rng = random.Random(rng_seed)
    a1 = A.d1.dense()
    r1 = A.module(1).rank

    def minors_ok(combos):
        vecs = []
        for combo in combos:
            v = [Polynomial.zero(), Polynomial.zero()]
            for k, c in combo:
                v[0] = v[0] + a1[0][k - 1].scale(c)
                v[1] = v[1] + a1[1][k - 1].scale(c)
            vecs.append(v)
        for i in range(4):
            for j in range(i + 1, 4):
                m = vecs[i][0] * vecs[j][1] - vecs[j][0] * vecs[i][1]
                if m.is_zero():
                    return False
        return True

    for _ in range(tries):
        combos = [
            [(k, rng.randint(0, 2) if k != base else 1)
             for k in range(1, r1 + 1)]
            for base in rng.sample(range(1, r1 + 1), 4)
        ]
        combos = [[(k, c) for k, c in combo if c] for combo in combos]
        if minors_ok(combos):
            return {"alpha": combos}
    return None


def cyclic_link_shape(A, maps=None):
    """Link a non-minimal cyclic resolution and normalize the unit row.

    The presentation must have the split shape: first column maps to the
    first generator with a unit, the rest of the first row and the first
    entry of the second row vanish.  The returned complex carries the
    reduced link with its first differential brought to the same shape by
    unit pivoting; the identification of the second row with a colon ideal
    is reported, not verified.
    """
    a1 = A.d1.dense()
    if not a1[0][0].constant_term():
        raise ValueError("a1[1,1] must be a unit")
    if any(not p.is_zero() for p in a1[0][1:]) or not a1[1][0].is_zero():
        raise ValueError("a1 must have the split cyclic shape")
    L = minimal_br_link(A, (1, 2, 3, 4), maps)
    D = L.minimized
    d1 = D.d1.dense()
    d2 = D.d2.dense()
    piv = None
    for j, p in enumerate(d1[0]):
        if p.constant_term():
            piv = j
            break
    if piv is None:
        raise LinkVerificationError("no unit in the first row of the link")
    lam = d1[0][piv].constant_term()
    d1[0] = [p.scale(Fraction(1) / lam) for p in d1[0]]
    d2[piv] = [p.scale(lam) for p in d2[piv]]
    # Column operations clearing the unit row (inverse row operations on
    # the next differential), then one row operation clearing the column.
    for j in range(len(d1[0])):
        if j == piv or d1[0][j].is_zero():
            continue
        f = d1[0][j]
        for i in range(2):
            d1[i][j] = d1[i][j] - f * d1[i][piv]
        d2[piv] = [p + f * q for p, q in zip(d2[piv], d2[j])]
    if not d1[1][piv].is_zero():
        f = d1[1][piv]
        d1[1] = [p - f * q for p, q in zip(d1[1], d1[0])]
    # Move the pivot column first.
    order = [piv] + [j for j in range(len(d1[0])) if j != piv]
    d1 = [[row[j] for j in order] for row in d1]
    d2 = [d2[j] for j in order]
    names = list(D.module(1).basis_names)
    names = [names[j] for j in order]
    modules = (D.module(0), FreeModule("D1", names), D.module(2),
               D.module(3))
    out = complex_from_matrices(d1, d2, D.d3.dense(), modules=modules)
    rep = check_complex(out)
    if not (rep["d1d2_zero"] and rep["d2d3_zero"]):
        raise LinkVerificationError("unit normalization broke the complex")
    return out


# -- reports -------------------------------------------------------------


def _mat_strings(m):
    return [[str(p) for p in row] for row in m]


def link_report(L, classify=None):
    """JSON-ready summary of one link."""
    rep = {
        "cols": list(L.cols),
        "beta1": _mat_strings(L.beta[0]),
        "beta2": _mat_strings(L.beta[1]),
        "beta3": _mat_strings(L.beta[2]),
        "cone_format": list(L.cone.format) if L.cone else None,
        "minimized_format": list(L.minimized.format) if L.minimized else None,
        "verified": True,
        "warnings": list(L.warnings),
    }
    if L.minimized is not None:
        rep["minimized_d1"] = _mat_strings(L.minimized.d1.dense())
        rep["minimized_d2"] = _mat_strings(L.minimized.d2.dense())
        rep["minimized_d3"] = _mat_strings(L.minimized.d3.dense())
        rep["fully_minimal_format"] = list(minimize(L.minimized).format)
    if classify is not None:
        rep["classifier"] = classify
    return rep
