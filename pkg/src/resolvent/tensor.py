"""Free modules with named bases, tensor/exterior/symmetric powers, duals,
elements, linear maps and the evaluation pairing.

A SpaceExpr is a formal tensor product of factors.  Each factor is a module
or its dual, raised to a plain, exterior or symmetric power.  Basis words
are tuples with one component per factor: an integer (1-based basis index)
for plain factors, a strictly increasing tuple for exterior powers, and a
weakly increasing tuple for symmetric powers.  Symmetric words carry no
multinomial normalization, and the dual pairing is orthonormal on canonical
words in both the exterior and symmetric case.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .ring import Polynomial, sort_sign

ENUMERATION_CAP = 10 ** 6


class FreeModule:
    """A finitely generated free module with a named basis."""

    __slots__ = ("id", "basis_names")

    def __init__(self, mid, basis_names):
        if len(set(basis_names)) != len(basis_names):
            raise ValueError("basis labels must be unique")
        self.id = mid
        self.basis_names = tuple(basis_names)

    @property
    def rank(self):
        return len(self.basis_names)

    def __repr__(self):
        return "FreeModule(%s, rank %d)" % (self.id, self.rank)

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.id == other.id
            and self.basis_names == other.basis_names
        )

    def __hash__(self):
        return hash((self.id, self.basis_names))


class Factor:
    """One tensor factor: a module or its dual, to a plain/ext/sym power."""

    __slots__ = ("module", "dual", "kind", "k")

    def __init__(self, module, dual=False, kind="plain", k=1):
        if kind not in ("plain", "ext", "sym"):
            raise ValueError(kind)
        if kind == "plain":
            k = 1
        self.module = module
        self.dual = dual
        self.kind = kind
        self.k = k

    def dim(self):
        n = self.module.rank
        if self.kind == "plain":
            return n
        if self.kind == "ext":
            return comb(n, self.k)
        return comb(n + self.k - 1, self.k)

    def words(self):
        n = self.module.rank
        rng = range(1, n + 1)
        if self.kind == "plain":
            return list(rng)
        if self.kind == "ext":
            return list(itertools.combinations(rng, self.k))
        return list(itertools.combinations_with_replacement(rng, self.k))

    def flip_dual(self):
        return Factor(self.module, not self.dual, self.kind, self.k)

    def word_str(self, w):
        names = self.module.basis_names
        if self.kind == "plain":
            s = names[w - 1]
        elif self.kind == "ext":
            s = "^".join(names[i - 1] for i in w)
        else:
            s = ".".join(names[i - 1] for i in w)
        return s + ("*" if self.dual else "")

    def key(self):
        return (self.module, self.dual, self.kind, self.k)

    def __eq__(self, other):
        return isinstance(other, Factor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        base = self.module.id + ("*" if self.dual else "")
        if self.kind == "plain":
            return base
        op = "^" if self.kind == "ext" else "S"
        return "%s%d(%s)" % (op, self.k, base)


def plain(module):
    return Factor(module)


def dual(module):
    return Factor(module, dual=True)


def ext(module, k, is_dual=False):
    return Factor(module, dual=is_dual, kind="ext", k=k)


def sym(module, k, is_dual=False):
    return Factor(module, dual=is_dual, kind="sym", k=k)


class SpaceExpr:
    """A formal tensor product of factors."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = tuple(factors)

    def dim(self):
        d = 1
        for f in self.factors:
            d *= f.dim()
        return d

    def words(self):
        if self.dim() > ENUMERATION_CAP:
            raise ValueError(
                "space dimension %d exceeds enumeration cap %d"
                % (self.dim(), ENUMERATION_CAP)
            )
        return [tuple(w) for w in itertools.product(*(f.words() for f in self.factors))]

    def dual_space(self):
        return SpaceExpr([f.flip_dual() for f in self.factors])

    def word_str(self, word):
        return " (x) ".join(f.word_str(w) for f, w in zip(self.factors, word))

    def __eq__(self, other):
        return isinstance(other, SpaceExpr) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return " (x) ".join(repr(f) for f in self.factors)


def space(*factors):
    out = []
    for f in factors:
        if isinstance(f, FreeModule):
            out.append(plain(f))
        elif isinstance(f, Factor):
            out.append(f)
        else:
            raise TypeError(f)
    return SpaceExpr(out)


def wedge_normalize(indices):
    """Return (sign, strictly increasing tuple); sign 0 on a repeat."""
    return sort_sign(indices)


def sym_normalize(indices):
    """Return the weakly increasing tuple (symmetric words have no sign)."""
    return tuple(sorted(indices))


class Element:
    """A sparse element of a SpaceExpr with Polynomial coordinates."""

    __slots__ = ("space", "coords")

    def __init__(self, space, coords=None):
        self.space = space
        self.coords = coords if coords is not None else {}

    @staticmethod
    def zero(space):
        return Element(space)

    def is_zero(self):
        return not self.coords

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.space != self.space:
            raise ValueError("space mismatch in addition")
        out = dict(self.coords)
        for w, p in other.coords.items():
            s = out.get(w)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return Element(self.space, out)

    def __neg__(self):
        return Element(self.space, {w: -p for w, p in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p):
        if isinstance(p, (int, Fraction)):
            p = Polynomial.const(p)
        if p.is_zero():
            return Element(self.space)
        out = {}
        for w, q in self.coords.items():
            r = p * q
            if not r.is_zero():
                out[w] = r
        return Element(self.space, out)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.space == other.space
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.space, frozenset(self.coords.items())))

    def map_coords(self, fn):
        """Apply a Polynomial -> Polynomial function to every coordinate."""
        out = {}
        for w, p in self.coords.items():
            q = fn(p)
            if not q.is_zero():
                out[w] = q
        return Element(self.space, out)

    def __str__(self):
        if not self.coords:
            return "0"
        parts = []
        for w in sorted(self.coords):
            parts.append("(%s)*[%s]" % (self.coords[w], self.space.word_str(w)))
        return " + ".join(parts)

    __repr__ = __str__


def basis_element(space, word, coeff=1):
    """The element coeff * word; word components are normalized with signs."""
    sign = 1
    norm = []
    for f, comp in zip(space.factors, word):
        if f.kind == "plain":
            if not 1 <= comp <= f.module.rank:
                raise ValueError("basis index %r out of range" % (comp,))
            norm.append(comp)
        elif f.kind == "ext":
            s, canon = wedge_normalize(comp)
            if s == 0:
                return Element(space)
            if any(not 1 <= i <= f.module.rank for i in canon):
                raise ValueError("basis index out of range in %r" % (comp,))
            sign *= s
            norm.append(canon)
        else:
            canon = sym_normalize(comp)
            if any(not 1 <= i <= f.module.rank for i in canon):
                raise ValueError("basis index out of range in %r" % (comp,))
            norm.append(canon)
    if isinstance(coeff, (int, Fraction)):
        coeff = Polynomial.const(coeff)
    coeff = coeff.scale(sign) if sign != 1 else coeff
    if coeff.is_zero():
        return Element(space)
    return Element(space, {tuple(norm): coeff})


def pairing(v, functional):
    """Evaluate a functional on v; the dual basis is orthonormal."""
    if functional.space != v.space.dual_space():
        raise ValueError("pairing requires the formal dual space")
    total = Polynomial.zero()
    small, big = v.coords, functional.coords
    if len(big) < len(small):
        small, big = big, small
    for w, p in small.items():
        q = big.get(w)
        if q is not None:
            total = total + p * q
    return total


class LinearMap:
    """A sparse linear map between SpaceExprs, stored column-wise."""

    __slots__ = ("source", "target", "cols")

    def __init__(self, source, target, cols=None):
        self.source = source
        self.target = target
        # cols: source word -> {target word -> Polynomial}
        self.cols = cols if cols is not None else {}

    @staticmethod
    def zero(source, target):
        return LinearMap(source, target)

    @staticmethod
    def identity(space):
        return LinearMap(space, space, {w: {w: Polynomial.const(1)} for w in space.words()})

    @staticmethod
    def from_columns(source, target, column_fn):
        """Build from a function sending each source word to an Element."""
        cols = {}
        for w in source.words():
            img = column_fn(w)
            if img.space != target:
                raise ValueError("column image lies in the wrong space")
            if img.coords:
                cols[w] = dict(img.coords)
        return LinearMap(source, target, cols)

    @staticmethod
    def from_matrix(source, target, rows):
        """Build a map of plain single-factor spaces from a dense matrix.

        rows[i][j] is the coefficient of target basis vector i+1 in the image
        of source basis vector j+1; entries may be Polynomials, ints or
        strings (parsed).
        """
        from .ring import poly_parse

        cols = {}
        for i, row in enumerate(rows):
            for j, val in enumerate(row):
                if isinstance(val, str):
                    val = poly_parse(val)
                elif isinstance(val, (int, Fraction)):
                    val = Polynomial.const(val)
                if val.is_zero():
                    continue
                cols.setdefault((j + 1,), {})[(i + 1,)] = val
        return LinearMap(source, target, cols)

    def entry(self, tword, sword):
        return self.cols.get(sword, {}).get(tword, Polynomial.zero())

    def apply(self, v):
        if v.space != self.source:
            raise ValueError("map_apply: element not in the source space")
        out = {}
        for w, p in v.coords.items():
            col = self.cols.get(w)
            if col is None:
                continue
            for tw, q in col.items():
                s = out.get(tw)
                r = p * q
                s = r if s is None else s + r
                if s.is_zero():
                    out.pop(tw, None)
                else:
                    out[tw] = s
        return Element(self.target, out)

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ValueError("map_compose: spaces do not chain")
        cols = {}
        for sw, col in other.cols.items():
            out = {}
            for mw, p in col.items():
                col2 = self.cols.get(mw)
                if col2 is None:
                    continue
                for tw, q in col2.items():
                    s = out.get(tw)
                    r = p * q
                    s = r if s is None else s + r
                    if s.is_zero():
                        out.pop(tw, None)
                    else:
                        out[tw] = s
            if out:
                cols[sw] = out
        return LinearMap(other.source, self.target, cols)

    def __add__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if other.source != self.source or other.target != self.target:
            raise ValueError("map addition: space mismatch")
        cols = {sw: dict(col) for sw, col in self.cols.items()}
        for sw, col in other.cols.items():
            mine = cols.setdefault(sw, {})
            for tw, p in col.items():
                s = mine.get(tw)
                s = p if s is None else s + p
                if s.is_zero():
                    mine.pop(tw, None)
                else:
                    mine[tw] = s
            if not mine:
                del cols[sw]
        return LinearMap(self.source, self.target, cols)

    def __neg__(self):
        return LinearMap(
            self.source,
            self.target,
            {sw: {tw: -p for tw, p in col.items()} for sw, col in self.cols.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p):
        if isinstance(p, (int, Fraction)):
            p = Polynomial.const(p)
        if p.is_zero():
            return LinearMap(self.source, self.target)
        cols = {}
        for sw, col in self.cols.items():
            new = {}
            for tw, q in col.items():
                r = p * q
                if not r.is_zero():
                    new[tw] = r
            if new:
                cols[sw] = new
        return LinearMap(self.source, self.target, cols)

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.source == other.source
            and self.target == other.target
            and self.cols == other.cols
        )

    def transpose_dual(self):
        """The dual map between the formal dual spaces."""
        cols = {}
        for sw, col in self.cols.items():
            for tw, p in col.items():
                cols.setdefault(tw, {})[sw] = p
        return LinearMap(self.target.dual_space(), self.source.dual_space(), cols)

    def map_entries(self, fn):
        """Apply a Polynomial -> Polynomial function to every entry."""
        cols = {}
        for sw, col in self.cols.items():
            new = {}
            for tw, p in col.items():
                q = fn(p)
                if not q.is_zero():
                    new[tw] = q
            if new:
                cols[sw] = new
        return LinearMap(self.source, self.target, cols)

    def dense(self):
        """Dense matrix (list of rows of Polynomials) in word order."""
        swords = self.source.words()
        twords = self.target.words()
        return [
            [self.entry(tw, sw) for sw in swords] for tw in twords
        ]

    def __repr__(self):
        return "LinearMap(%r -> %r, %d nonzero columns)" % (
            self.source,
            self.target,
            len(self.cols),
        )


def map_apply(m, v):
    return m.apply(v)


def map_compose(g, f):
    return g.compose(f)


def tensor_elements(a, b):
    """The tensor product element in the concatenated space."""
    out_space = SpaceExpr(a.space.factors + b.space.factors)
    out = {}
    for wa, pa in a.coords.items():
        for wb, pb in b.coords.items():
            p = pa * pb
            if not p.is_zero():
                out[wa + wb] = p
    return Element(out_space, out)


def _single_power_product(space_out, kind, a, b):
    out = Element.zero(space_out)
    for (wa,), pa in a.coords.items():
        ta = wa if isinstance(wa, tuple) else (wa,)
        for (wb,), pb in b.coords.items():
            tb = wb if isinstance(wb, tuple) else (wb,)
            p = pa * pb
            if p.is_zero():
                continue
            out = out + basis_element(space_out, (ta + tb,), p)
    return out


def wedge_product(a, b):
    """Exterior product of single-factor elements of powers of one module.

    Accepts plain factors as exterior power one.
    """
    fa, fb = a.space.factors[0], b.space.factors[0]
    if len(a.space.factors) != 1 or len(b.space.factors) != 1:
        raise ValueError("wedge_product needs single-factor elements")
    if fa.module != fb.module or fa.dual != fb.dual:
        raise ValueError("wedge_product: factor mismatch")
    if "sym" in (fa.kind, fb.kind):
        raise ValueError("wedge_product: symmetric factor")
    k = fa.k + fb.k
    out_space = SpaceExpr([ext(fa.module, k, fa.dual)])
    return _single_power_product(out_space, "ext", a, b)


def sym_product(a, b):
    """Symmetric product of single-factor elements of powers of one module."""
    fa, fb = a.space.factors[0], b.space.factors[0]
    if len(a.space.factors) != 1 or len(b.space.factors) != 1:
        raise ValueError("sym_product needs single-factor elements")
    if fa.module != fb.module or fa.dual != fb.dual:
        raise ValueError("sym_product: factor mismatch")
    if "ext" in (fa.kind, fb.kind) and max(fa.k, fb.k) > 1:
        raise ValueError("sym_product: exterior factor")
    k = fa.k + fb.k
    out_space = SpaceExpr([sym(fa.module, k, fa.dual)])
    return _single_power_product(out_space, "sym", a, b)


def induced_power_map(m, kind, k):
    """The functorial exterior or symmetric power of a map of plain modules."""
    if len(m.source.factors) != 1 or len(m.target.factors) != 1:
        raise ValueError("induced_power_map needs plain module maps")
    fs, ft = m.source.factors[0], m.target.factors[0]
    if fs.kind != "plain" or ft.kind != "plain":
        raise ValueError("induced_power_map needs plain module maps")
    if kind not in ("ext", "sym"):
        raise ValueError(kind)
    mk = ext if kind == "ext" else sym
    src = SpaceExpr([mk(fs.module, k, fs.dual)])
    tgt = SpaceExpr([mk(ft.module, k, ft.dual)])
    if kind == "ext" and k > fs.module.rank:
        return LinearMap.zero(src, tgt)

    images = {w: m.apply(basis_element(m.source, w)) for w in m.source.words()}
    prod = wedge_product if kind == "ext" else sym_product

    def column(word):
        (idx,) = word
        acc = None
        for i in idx:
            img = images[(i,)]
            img1 = Element(
                SpaceExpr([mk(ft.module, 1, ft.dual)]),
                {((w,),): p for (w,), p in img.coords.items()},
            )
            acc = img1 if acc is None else prod(acc, img1)
        if acc is None:
            raise ValueError("k = 0 power not supported")
        return Element(tgt, acc.coords)

    return LinearMap.from_columns(src, tgt, column)


def minor2(d1, i, j):
    """The 2x2 minor on columns i, j of a map to a rank-2 module.

    Antisymmetric in (i, j); zero when i = j.
    """
    if d1.target.factors[0].module.rank != 2:
        raise ValueError("minor2 requires a rank-2 target")
    a = d1.entry((1,), (i,))
    b = d1.entry((1,), (j,))
    c = d1.entry((2,), (i,))
    d = d1.entry((2,), (j,))
    return a * d - b * c
