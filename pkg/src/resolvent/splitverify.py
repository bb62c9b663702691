"""Mechanical verification of the structure-map identities over the split
exact complexes with defect variables.

Every identity is checked by expanding both sides to canonical polynomials
in the defect variables for every admissible index assignment.  The
identities are stated in engine conventions; the calibration of signs and
scalar factors against the lift normalizations is frozen here and exercised
by the golden tests.
"""

import itertools
import json
import random

from .complexes import build_split_exact
from .ring import Polynomial, sort_sign
from .structmaps import StructureMaps, compute_structure_maps, map_spaces
from .tensor import LinearMap, basis_element

SPLIT_FORMATS = ((2, 5, 5, 2), (2, 6, 5, 1))

RELATION_TAGS = (
    "relw31_1", "relw31_2", "relw31_3", "relw31_4",
    "relw11_1", "relw11_2",
    "relw32_1", "relw32_2", "relw32_3",
    "relw12_1", "relw12_2",
)

# Identities mentioning the second gamma generator are vacuous when the top
# module has rank one, so they are gated to the (2,5,5,2) format.
RELATION_FORMATS = {
    "relw31_1": SPLIT_FORMATS,
    "relw31_2": SPLIT_FORMATS,
    "relw31_3": ((2, 5, 5, 2),),
    "relw31_4": ((2, 5, 5, 2),),
    "relw11_1": SPLIT_FORMATS,
    "relw11_2": ((2, 5, 5, 2),),
    "relw32_1": SPLIT_FORMATS,
    "relw32_2": ((2, 6, 5, 1),),
    "relw32_3": ((2, 5, 5, 2),),
    "relw12_1": ((2, 6, 5, 1),),
    "relw12_2": ((2, 5, 5, 2),),
}


class VTable:
    """Structure-map values of a split complex with generic defect liftings."""

    def __init__(self, C, maps):
        self.complex = C
        self.maps = maps
        self.fmt = tuple(C.module(i).rank for i in range(4))
        self.n = C.module(1).rank
        self.r2 = C.module(2).rank
        self.m = C.module(3).rank

    def value(self, mid, word, key):
        """One matrix entry; alternating words are sign-normalized, words
        with a repeated index give zero."""
        dom, _ = map_spaces(self.complex, mid)
        try:
            el = basis_element(dom, word)
        except (KeyError, ValueError):
            return Polynomial.zero()
        if el.is_zero():
            return Polynomial.zero()
        return self.maps[mid].apply(el).coords.get(key, Polynomial.zero())

    def _d_entry(self, dmap, r, tgt_word, src_word):
        img = dmap.apply(basis_element(self.complex.space(r), src_word))
        return img.coords.get(tgt_word, Polynomial.zero())

    def x(self, j, i):
        return self._d_entry(self.complex.d1, 1, (j,), (i,))

    def y(self, k, h):
        return self._d_entry(self.complex.d2, 2, (k,), (h,))

    def z(self, h, t):
        return self._d_entry(self.complex.d3, 3, (h,), (t,))

    def minor(self, i, j):
        return self.x(1, i) * self.x(2, j) - self.x(1, j) * self.x(2, i)


def generic_v_table(fmt):
    C = build_split_exact(tuple(fmt))
    maps = compute_structure_maps(C, mode="generic")
    return VTable(C, maps)


def mutated_v_table(v):
    """Flip the sign of one defect term inside w11; used to show the
    verifier is not vacuous."""
    w11 = v.maps["w11"]
    cols = {w: dict(col) for w, col in w11.cols.items()}
    for w in sorted(cols):
        for tgt in sorted(cols[w]):
            if not cols[w][tgt].is_zero():
                cols[w][tgt] = cols[w][tgt].scale(-1)
                table = dict(v.maps.table)
                table["w11"] = LinearMap(w11.source, w11.target, cols)
                maps = StructureMaps(v.complex, table, mode=v.maps.mode)
                return VTable(v.complex, maps)
    raise ValueError("w11 has no nonzero entry to mutate")


def _delta(a, b):
    return Polynomial.const(1 if a == b else 0)


def enumerate_assignments(tag, fmt):
    """Canonical index assignments of one identity on one format."""
    fmt = tuple(fmt)
    if fmt not in RELATION_FORMATS[tag]:
        return []
    n = fmt[1]
    r2 = fmt[2]
    m = fmt[3]
    gens = range(1, n + 1)
    hs = range(1, r2 + 1)
    ts = range(1, m + 1)
    out = []
    if tag == "relw31_1":
        for (i, j), s, t in itertools.product(
                itertools.combinations(gens, 2), ts, ts):
            out.append((i, j, s, t))
    elif tag == "relw31_2":
        for tri, pair, t in itertools.product(
                itertools.combinations(gens, 3),
                itertools.combinations(gens, 2), ts):
            out.append((tri, pair, t))
    elif tag == "relw31_3":
        for four, x, t in itertools.product(
                itertools.combinations(gens, 4), gens, ts):
            if x in four:
                out.append((four, x, t))
    elif tag == "relw31_4":
        for four in itertools.combinations(gens, 4):
            for x in four:
                for tri in itertools.combinations(four, 3):
                    out.append((four, x, tri))
    elif tag == "relw11_1":
        for tri, h, t, j in itertools.product(
                itertools.combinations(gens, 3), hs, ts, (1, 2)):
            out.append((tri, h, t, j))
    elif tag == "relw11_2":
        for four in itertools.combinations(gens, 4):
            for a, b in itertools.combinations(four, 2):
                for h, j in itertools.product(hs, (1, 2)):
                    out.append((four, (a, b), h, j))
    elif tag == "relw32_1":
        for i, h, r in itertools.product(gens, hs, hs):
            out.append((i, h, r))
    elif tag in ("relw32_2", "relw32_3"):
        for four, h, r in itertools.product(
                itertools.combinations(gens, 4), hs, hs):
            out.append((four, h, r))
    elif tag == "relw12_1":
        for head in gens:
            for last in gens:
                if last == head:
                    continue
                middle = tuple(i for i in gens if i not in (head, last))
                perm = (head,) + middle + (last,)
                for h, j in itertools.product(hs, (1, 2)):
                    out.append((perm, h, j))
    elif tag == "relw12_2":
        for four in itertools.combinations(gens, 4):
            missing = [i for i in gens if i not in four][0]
            perm = four + (missing,)
            for h, j in itertools.product(hs, (1, 2)):
                out.append((perm, h, j))
    else:
        raise KeyError(tag)
    return out


def _sides_relw31_1(v, a):
    i, j, s, t = a
    lhs = Polynomial.zero()
    for h in range(1, v.r2 + 1):
        lhs = lhs + v.z(h, t) * v.value("w21", ((i, j), h), (s,))
    return lhs, _delta(s, t) * v.minor(i, j)


def _sides_relw31_2(v, a):
    tri, pair, t = a
    i1, i2, i3 = tri
    lhs = Polynomial.zero()
    rhs = Polynomial.zero()
    for h in range(1, v.r2 + 1):
        lhs = lhs + v.value("w21", (pair, h), (t,)) * v.value("w31", (tri,), (h,))
        rhs = rhs + v.z(h, t) * (
            v.minor(*pair) * v.value("w31", (tri,), (h,))
            - v.minor(i1, i2) * v.value("w31", ((i3,) + pair,), (h,))
            + v.minor(i1, i3) * v.value("w31", ((i2,) + pair,), (h,))
            - v.minor(i2, i3) * v.value("w31", ((i1,) + pair,), (h,)))
    return lhs, rhs


def _sides_relw31_3(v, a):
    four, x, t = a
    lhs = Polynomial.zero()
    for h in range(1, v.r2 + 1):
        lhs = lhs + v.z(h, t) * v.value("w2_2_1", (four, x, h), ((1, 2),))
    rhs = (
        (v.value("w11", (four,), (2, 1)) * v.x(1, x)
         - v.value("w11", (four,), (1, 1)) * v.x(2, x)).scale(1 if t == 2 else 0)
        + (v.value("w11", (four,), (1, 2)) * v.x(2, x)
           - v.value("w11", (four,), (2, 2)) * v.x(1, x)).scale(1 if t == 1 else 0))
    return lhs, rhs


def _sides_relw31_4(v, a):
    four, x, tri = a
    lhs = Polynomial.zero()
    for h in range(1, v.r2 + 1):
        lhs = lhs + v.value("w2_2_1", (four, x, h), ((1, 2),)) \
            * v.value("w31", (tri,), (h,))
    if x in tri:
        return lhs, Polynomial.zero()
    w = tuple(tri) + (x,)
    det = (v.value("w11", (w,), (1, 1)) * v.value("w11", (w,), (2, 2))
           - v.value("w11", (w,), (2, 1)) * v.value("w11", (w,), (1, 2)))
    fsign, sfour = sort_sign(four)
    tsign, _ = sort_sign(tri)
    front = (-1) ** (sfour.index(x) + 2)
    return lhs, det.scale(fsign * tsign * front)


def _sides_relw11_1(v, a):
    tri, h, t, j = a
    i1, i2, i3 = tri
    lhs = Polynomial.zero()
    for k in range(1, v.n + 1):
        lhs = lhs + v.y(k, h) * v.value("w11", ((i1, i2, i3, k),), (j, t))
    rhs = (v.x(j, i1) * v.value("w21", ((i2, i3), h), (t,))
           - v.x(j, i2) * v.value("w21", ((i1, i3), h), (t,))
           + v.x(j, i3) * v.value("w21", ((i1, i2), h), (t,)))
    return lhs, rhs


def _sides_relw11_2(v, a):
    four, pair, h, j = a
    a1, a2 = pair
    lhs = Polynomial.zero()
    for k in range(1, v.n + 1):
        lhs = lhs + v.y(k, h) * v.value(
            "w1_2_1", (tuple(four) + (k,), pair), (j, (1, 2)))
    rhs = (v.x(j, a1) * v.value("w2_2_1", (four, a2, h), ((1, 2),))
           - v.x(j, a2) * v.value("w2_2_1", (four, a1, h), ((1, 2),))
           + v.value("w11", (four,), (j, 1)) * v.value("w21", (pair, h), (2,))
           - v.value("w11", (four,), (j, 2)) * v.value("w21", (pair, h), (1,)))
    return lhs, rhs.scale(-1)


def _sides_relw32_1(v, a):
    i, h, r = a
    lhs = Polynomial.zero()
    for k in range(1, v.n + 1):
        lhs = lhs + v.y(k, h) * v.value("w21", ((i, k), r), (1,))
        lhs = lhs + v.y(k, r) * v.value("w21", ((i, k), h), (1,))
    return lhs, Polynomial.zero()


def _sides_relw32_2(v, a):
    four, h, r = a
    lhs = Polynomial.zero()
    for k in range(1, v.n + 1):
        lhs = lhs + v.y(k, h) * v.value(
            "w2_2_2", (tuple(four) + (k,), r), ((1, 1),))
        lhs = lhs + v.y(k, r) * v.value(
            "w2_2_2", (tuple(four) + (k,), h), ((1, 1),))
    rhs = Polynomial.zero()
    for l, j in itertools.combinations(range(4), 2):
        comp = tuple(four[q] for q in range(4) if q not in (l, j))
        prod = v.value("w21", ((four[l], four[j]), h), (1,)) \
            * v.value("w21", (comp, r), (1,))
        rhs = rhs + prod.scale((-1) ** (l + j))
    return lhs, rhs.scale(-2)


def _sides_relw32_3(v, a):
    four, h, r = a
    lhs = Polynomial.zero()
    for k in range(1, v.n + 1):
        lhs = lhs + v.y(k, h) * v.value("w2_2_1", (four, k, r), ((1, 2),))
        lhs = lhs - v.y(k, r) * v.value("w2_2_1", (four, k, h), ((1, 2),))
    rhs = Polynomial.zero()
    for l, j in itertools.combinations(range(4), 2):
        comp = tuple(four[q] for q in range(4) if q not in (l, j))
        sgn = (-1) ** (l + j)
        rhs = rhs + (v.value("w21", ((four[l], four[j]), h), (1,))
                     * v.value("w21", (comp, r), (2,))).scale(sgn)
        rhs = rhs - (v.value("w21", ((four[l], four[j]), r), (1,))
                     * v.value("w21", (comp, h), (2,))).scale(sgn)
    return lhs, rhs


def _sides_relw12_1(v, a):
    perm, h, j = a
    i = (None,) + tuple(perm)
    lhs = v.y(i[6], h) * v.value("w1_2_2", (perm, i[1]), (j, (1, 1)))
    rhs = (v.x(j, i[1])
           * v.value("w2_2_2", (tuple(perm[:5]), h), ((1, 1),))).scale(-1)
    acc = Polynomial.zero()
    for k in range(2, 6):
        five = tuple(i[q] for q in range(1, 6) if q != k)
        acc = acc + (v.value("w21", ((i[1], i[k]), h), (1,))
                     * v.value("w11", (five,), (j, 1))).scale((-1) ** k)
    return lhs, rhs + acc.scale(2)


def _sides_relw12_2(v, a):
    perm, h, j = a
    i = (None,) + tuple(perm)
    lhs = (v.y(i[5], h)
           * v.value("w1_3", (perm, perm), (j, (1, 2), 1))).scale(-2)
    rhs = Polynomial.zero()
    for k, l in itertools.combinations(range(1, 5), 2):
        pair = tuple(q for q in perm[:4] if q not in (i[k], i[l]))
        rhs = rhs + (v.value("w21", ((i[k], i[l]), h), (1,))
                     * v.value("w1_2_1", (perm, pair), (j, (1, 2)))
                     ).scale((-1) ** (k + l))
    four = tuple(perm[:4])
    for k in range(1, 6):
        sub = tuple(i[q] for q in range(1, 6) if q != k)
        rhs = rhs + (v.value("w2_2_1", (four, i[k], h), ((1, 2),))
                     * v.value("w11", (sub,), (j, 1))).scale((-1) ** k)
    return lhs, rhs


_SIDES = {
    "relw31_1": _sides_relw31_1,
    "relw31_2": _sides_relw31_2,
    "relw31_3": _sides_relw31_3,
    "relw31_4": _sides_relw31_4,
    "relw11_1": _sides_relw11_1,
    "relw11_2": _sides_relw11_2,
    "relw32_1": _sides_relw32_1,
    "relw32_2": _sides_relw32_2,
    "relw32_3": _sides_relw32_3,
    "relw12_1": _sides_relw12_1,
    "relw12_2": _sides_relw12_2,
}


def relation_sides(tag, v, assignment):
    return _SIDES[tag](v, assignment)


def verify_relation(tag, assignment, v):
    """Expand both sides and return the difference; pass means zero."""
    lhs, rhs = relation_sides(tag, v, assignment)
    diff = lhs - rhs
    return {
        "pass": diff.is_zero(),
        "difference": diff,
        "terms": max(len(lhs.terms), len(rhs.terms)),
    }


def _shuffled(tag, a, rng):
    """A non-canonical variant of a canonical assignment; the word-level
    sign handling must make the identity hold for it as well."""
    if tag == "relw31_1":
        i, j, s, t = a
        return (j, i, s, t)
    if tag == "relw31_2":
        tri, pair, t = a
        tri = tuple(rng.sample(list(tri), 3))
        return (tri, (pair[1], pair[0]), t)
    if tag == "relw31_3":
        four, x, t = a
        return (tuple(rng.sample(list(four), 4)), x, t)
    if tag == "relw31_4":
        four, x, tri = a
        return (tuple(rng.sample(list(four), 4)), x,
                tuple(rng.sample(list(tri), 3)))
    if tag == "relw11_1":
        tri, h, t, j = a
        return (tuple(rng.sample(list(tri), 3)), h, t, j)
    if tag == "relw11_2":
        four, pair, h, j = a
        return (tuple(rng.sample(list(four), 4)),
                (pair[1], pair[0]), h, j)
    if tag in ("relw32_2", "relw32_3"):
        four, h, r = a
        return (tuple(rng.sample(list(four), 4)), h, r)
    if tag == "relw12_1":
        perm, h, j = a
        mid = list(perm[1:5])
        rng.shuffle(mid)
        return ((perm[0],) + tuple(mid) + (perm[5],), h, j)
    if tag == "relw12_2":
        perm, h, j = a
        four = list(perm[:4])
        rng.shuffle(four)
        return (tuple(four) + (perm[4],), h, j)
    return a


def verify_all(fmt, v=None, fail_fast=False, sample_fraction=0.1, seed=0,
               tags=None, jobs=1):
    """Run every applicable identity over every canonical assignment and a
    sampled set of non-canonical ones; reduce into a certificate.

    tags restricts the run to a subset of identities; jobs > 1 evaluates
    the assignments of each identity on a thread pool (the reduction is
    order-independent, so the certificate does not depend on scheduling).
    """
    fmt = tuple(fmt)
    if fmt not in SPLIT_FORMATS:
        raise ValueError("split verification needs a split exact format")
    if v is None:
        v = generic_v_table(fmt)
    rng = random.Random(seed)
    cert = {
        "format": list(fmt),
        "relations": [],
        "skipped": [],
        "all_pass": True,
        "noncanonical_sampled": 0,
        "failures": [],
    }
    pool = None
    if jobs and jobs > 1:
        import concurrent.futures
        pool = concurrent.futures.ThreadPoolExecutor(max_workers=jobs)
    for tag in RELATION_TAGS:
        if tags is not None and tag not in tags:
            continue
        if fmt not in RELATION_FORMATS[tag]:
            cert["skipped"].append(
                {"tag": tag, "reason": "not applicable to this format"})
            continue
        assignments = enumerate_assignments(tag, fmt)
        entry = {
            "tag": tag,
            "assignments": len(assignments),
            "all_pass": True,
            "max_terms": 0,
        }
        if pool is not None:
            results = list(pool.map(
                lambda a: verify_relation(tag, a, v), assignments))
        else:
            results = None
        for pos, a in enumerate(assignments):
            res = results[pos] if results is not None else \
                verify_relation(tag, a, v)
            entry["max_terms"] = max(entry["max_terms"], res["terms"])
            if not res["pass"]:
                entry["all_pass"] = False
                cert["all_pass"] = False
                cert["failures"].append({
                    "tag": tag,
                    "assignment": repr(a),
                    "difference": str(res["difference"]),
                })
                if fail_fast:
                    cert["relations"].append(entry)
                    return cert
        step = max(1, int(1 / sample_fraction)) if sample_fraction else 0
        if step:
            for a in assignments[::step]:
                res = verify_relation(tag, _shuffled(tag, a, rng), v)
                cert["noncanonical_sampled"] += 1
                if not res["pass"]:
                    entry["all_pass"] = False
                    cert["all_pass"] = False
                    cert["failures"].append({
                        "tag": tag,
                        "assignment": repr(a) + " (shuffled)",
                        "difference": str(res["difference"]),
                    })
                    if fail_fast:
                        cert["relations"].append(entry)
                        return cert
        cert["relations"].append(entry)
    if pool is not None:
        pool.shutdown()
    return cert


def certificate_json(cert):
    return json.dumps(cert, indent=2, sort_keys=True)
