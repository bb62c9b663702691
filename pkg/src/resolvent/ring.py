"""Exact arithmetic: sparse multivariate polynomials over the rationals.

Variables live in a global append-only registry and come in four flavours:
plain indeterminates ("x"), indexed entries ("x11", "y[2,3]", "d2[1,4]"),
skew defect variables b[i,j,k;u] and defect variables c[i;u,t].  The b
variables are sign-normalized at construction (sorted indices and a parity
sign; repeated indices give the zero polynomial).  The c variables collapse
to a single variable per first index: c[i;u,t] is zero when u == t and equals
c[i;1,2] otherwise.

Monomials are tuples of (variable_id, exponent) pairs sorted by variable id.
The canonical term order is graded lex over the registry order.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction


class Variable:
    """An interned symbol.  Compare and hash by registry id."""

    __slots__ = ("vid", "tag", "name", "index")

    def __init__(self, vid, tag, name, index):
        self.vid = vid
        self.tag = tag          # "ind" | "entry" | "defect_b" | "defect_c"
        self.name = name        # base name ("x", "d2", "b", "c")
        self.index = index      # tuple of integers (possibly empty)

    def __repr__(self):
        return "Variable(%s)" % var_str(self)

    def __hash__(self):
        return self.vid

    def __eq__(self, other):
        return self is other


_registry_lock = threading.Lock()
_registry = {}          # key -> Variable
_variables = []         # vid -> Variable


def _intern(key, tag, name, index):
    v = _registry.get(key)
    if v is not None:
        return v
    with _registry_lock:
        v = _registry.get(key)
        if v is None:
            v = Variable(len(_variables), tag, name, index)
            _variables.append(v)
            _registry[key] = v
        return v


def indeterminate(name):
    """The plain indeterminate with the given name."""
    return _intern(("ind", name), "ind", name, ())


def entry_variable(name, *index):
    """An indexed entry variable such as x11 or d2[1,4]."""
    index = tuple(int(i) for i in index)
    return _intern(("entry", name, index), "entry", name, index)


def _b_key(i, j, k, u):
    return ("b", (i, j, k, u))


def b_variable(i, j, k, u):
    """The registry variable for the normalized (i<j<k) defect b[i,j,k;u]."""
    if not i < j < k:
        raise ValueError("b variable indices must be strictly increasing")
    return _intern(_b_key(i, j, k, u), "defect_b", "b", (i, j, k, u))


def c_variable(i):
    """The registry variable for the defect c[i;u,t] with u != t."""
    return _intern(("c", i), "defect_c", "c", (i,))


def var_str(v):
    if v.tag == "ind":
        return v.name
    if v.tag == "entry":
        if len(v.index) == 2 and all(0 <= i <= 9 for i in v.index):
            return "%s%d%d" % (v.name, v.index[0], v.index[1])
        return "%s[%s]" % (v.name, ",".join(str(i) for i in v.index))
    if v.tag == "defect_b":
        i, j, k, u = v.index
        return "b[%d,%d,%d;%d]" % (i, j, k, u)
    if v.tag == "defect_c":
        return "c[%d;1,2]" % v.index[0]
    raise ValueError(v.tag)


def sort_sign(indices):
    """Return (sign, sorted tuple); sign is 0 when an index repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, tuple(sorted(idx))
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class Polynomial:
    """A sparse polynomial: dict from monomial to nonzero Fraction.

    Instances are treated as immutable values; all operations return new
    polynomials in canonical form.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero():
        return Polynomial({})

    @staticmethod
    def const(c):
        c = Fraction(c)
        return Polynomial({(): c} if c else {})

    @staticmethod
    def from_variable(v):
        return Polynomial({((v.vid, 1),): Fraction(1)})

    # -- queries --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self):
        out = set()
        for m in self.terms:
            for vid, _ in m:
                out.add(_variables[vid])
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial({})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mul_monomials(m1, m2)
                c = c1 * c2
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial({})
        return Polynomial({m: x * c for m, x in self.terms.items()})

    def substitute(self, assignment):
        """Apply a ring homomorphism sending some Variables to Polynomials."""
        if not assignment:
            return self
        out = Polynomial({})
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            for vid, e in m:
                v = _variables[vid]
                rep = assignment.get(v)
                if rep is None:
                    term = term * Polynomial({((vid, e),): Fraction(1)})
                else:
                    term = term * (rep ** e)
            out = out + term
        return out

    # -- printing -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_monomial_sort_key):
            c = self.terms[m]
            factors = []
            for vid, e in m:
                s = var_str(_variables[vid])
                factors.append(s if e == 1 else "%s^%d" % (s, e))
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(c)) + "*" + "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        if text.startswith("+ "):
            return text[2:]
        return "-" + text[2:]

    __repr__ = __str__


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return NotImplemented


def _mul_monomials(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for vid, e in m2:
        d[vid] = d.get(vid, 0) + e
    return tuple(sorted(d.items()))


def _monomial_sort_key(m):
    deg = sum(e for _, e in m)
    # Graded lex, descending: higher degree first, then larger exponents on
    # earlier registry variables first.
    return (-deg, tuple((vid, -e) for vid, e in m))


def monomial_poly(m):
    return Polynomial({m: Fraction(1)})


ZERO = Polynomial.zero()
ONE = Polynomial.const(1)
HALF = Polynomial.const(Fraction(1, 2))


def poly(name):
    """Convenience: the polynomial for a plain indeterminate name."""
    return Polynomial.from_variable(indeterminate(name))


def entry(name, *index):
    return Polynomial.from_variable(entry_variable(name, *index))


def b_poly(i, j, k, u):
    """The defect polynomial b[i,j,k;u]: signed, zero on repeated indices."""
    sign, (si, sj, sk) = sort_sign((i, j, k))
    if sign == 0:
        return Polynomial({})
    p = Polynomial.from_variable(b_variable(si, sj, sk, u))
    return p if sign == 1 else -p


def c_poly(i, u=1, t=2):
    """The defect polynomial c[i;u,t]; zero when u == t."""
    if u == t:
        return Polynomial({})
    return Polynomial.from_variable(c_variable(i))


# -- parsing ------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_]*)|(?P<op>[-+*^()\[\],;/]))"
)


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), m.start()))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start()))
        else:
            tokens.append(("op", m.group("op"), m.start()))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError("expected %r" % op, pos)

    def parse(self):
        p = self.parse_expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return p

    def parse_expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            if val == "-":
                sign = -1
        total = self.parse_term().scale(sign)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.parse_term()
                total = total + (t if val == "+" else -t)
            else:
                return total

    def parse_term(self):
        p = self.parse_factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.parse_factor()
            else:
                return p

    def parse_factor(self):
        kind, val, pos = self.peek()
        if kind == "op" and val == "(":
            self.next()
            p = self.parse_expr()
            self.expect_op(")")
            return self.parse_power(p)
        if kind == "num":
            self.next()
            num = val
            kind, val2, _ = self.peek()
            if kind == "op" and val2 == "/":
                self.next()
                k2, den, p2 = self.next()
                if k2 != "num":
                    raise ParseError("expected denominator", p2)
                return Polynomial.const(Fraction(num, den))
            return Polynomial.const(num)
        if kind == "name":
            return self.parse_power(self.parse_variable())
        raise ParseError("expected a factor", pos)

    def parse_power(self, p):
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            k2, e, pos = self.next()
            if k2 != "num":
                raise ParseError("expected integer exponent", pos)
            return p ** e
        return p

    def parse_int_list(self):
        out = []
        while True:
            sign = 1
            kind, val, pos = self.peek()
            if kind == "op" and val == "-":
                self.next()
                sign = -1
            kind, val, pos = self.next()
            if kind != "num":
                raise ParseError("expected integer index", pos)
            out.append(sign * val)
            kind, val, _ = self.peek()
            if kind == "op" and val == ",":
                self.next()
            else:
                return out

    def parse_variable(self):
        kind, name, pos = self.next()
        assert kind == "name"
        kind, val, _ = self.peek()
        if kind == "num":
            # Forms like x11: exactly two decimal digits as a (row, col) pair.
            self.next()
            digits = str(val)
            if len(digits) != 2:
                raise ParseError("indexed name %s%s needs two digits" % (name, digits), pos)
            return entry(name, int(digits[0]), int(digits[1]))
        if kind == "op" and val == "[":
            self.next()
            idx = self.parse_int_list()
            kind, val, pos2 = self.peek()
            if kind == "op" and val == ";":
                self.next()
                extra = self.parse_int_list()
                self.expect_op("]")
                if name == "b":
                    if len(idx) != 3 or len(extra) != 1:
                        raise ParseError("b variable needs b[i,j,k;u]", pos)
                    return b_poly(idx[0], idx[1], idx[2], extra[0])
                if name == "c":
                    if len(idx) != 1 or len(extra) != 2:
                        raise ParseError("c variable needs c[i;u,t]", pos)
                    return c_poly(idx[0], extra[0], extra[1])
                raise ParseError("unknown tagged variable %r" % name, pos)
            self.expect_op("]")
            return entry(name, *idx)
        return poly(name)


def poly_parse(text):
    """Parse a polynomial string into canonical form."""
    return _Parser(text).parse()


def poly_print(p):
    return str(p)
