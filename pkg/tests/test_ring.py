"""Tests for the exact polynomial core."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from resolvent.ring import (
    Polynomial,
    b_poly,
    c_poly,
    entry,
    entry_variable,
    indeterminate,
    poly,
    poly_parse,
    ParseError,
)


def test_parse_zero():
    assert poly_parse("0").is_zero()
    assert poly_parse("0") == Polynomial.zero()


def test_parse_two_term_degree_two():
    p = poly_parse("x11*x22 - x12*x21")
    assert len(p.terms) == 2
    assert p.degree() == 2
    assert p == entry("x", 1, 1) * entry("x", 2, 2) - entry("x", 1, 2) * entry("x", 2, 1)


def test_parse_defect_term_with_fraction():
    p = poly_parse("1/2*b[1,2,3;1]*b[1,4,5;2]")
    assert len(p.terms) == 1
    assert list(p.terms.values()) == [Fraction(1, 2)]
    assert p == b_poly(1, 2, 3, 1) * b_poly(1, 4, 5, 2).scale(Fraction(1, 2))


def test_parse_bracket_and_bare_names():
    assert poly_parse("y[2,3]") == entry("y", 2, 3)
    assert poly_parse("y23") == entry("y", 2, 3)
    assert poly_parse("x") == poly("x")
    assert poly_parse("x^2 + 2*x + 1") == (poly("x") + 1) ** 2


def test_parse_errors_report_position():
    with pytest.raises(ParseError):
        poly_parse("x +")
    with pytest.raises(ParseError):
        poly_parse("q[1,2;3]")
    with pytest.raises(ParseError):
        poly_parse("b[1,2;3]")
    with pytest.raises(ParseError):
        poly_parse("x ? y")


def test_add_identity():
    p = poly_parse("x*y - 3*z")
    assert p + Polynomial.zero() == p
    assert p + 0 == p


def test_mul_expansion():
    x, y = poly("x"), poly("y")
    assert (x + y) * (x - y) == x * x - y * y


def test_sub_cancellation():
    p = poly_parse("x11*x22 - 1/3*x12")
    assert (p - p).is_zero()


def test_defect_b_normalization():
    assert b_poly(2, 1, 3, 1) == -b_poly(1, 2, 3, 1)
    assert b_poly(3, 1, 2, 1) == b_poly(1, 2, 3, 1)
    assert b_poly(1, 1, 3, 1).is_zero()


def test_defect_c_convention():
    assert c_poly(1, 1, 1).is_zero()
    assert c_poly(1, 1, 2) == c_poly(1, 2, 1)
    assert c_poly(1) == poly_parse("c[1;1,2]")
    assert poly_parse("c[2;1,1]").is_zero()


def test_substitute_examples():
    x, y = poly("x"), poly("y")
    vx = indeterminate("x")
    assert (x * y).substitute({vx: Polynomial.const(1)}) == y
    assert (x ** 2).substitute({vx: x + 1}) == x * x + 2 * x + 1
    p = poly_parse("x11*y - 2")
    assert p.substitute({}) == p


def test_constant_term():
    assert poly_parse("3/2 + x").constant_term() == Fraction(3, 2)
    assert poly_parse("x*y").constant_term() == 0
    assert poly_parse("1").constant_term() == 1


def test_print_canonical():
    assert str(Polynomial.zero()) == "0"
    assert str(poly_parse("-x")) == "-x"
    assert str(poly_parse("1/2*b[2,1,3;1]")) == "-1/2*b[1,2,3;1]"


# -- randomized property suites -----------------------------------------

_names = st.sampled_from(["x", "y", "z", "w"])


@st.composite
def polys(draw, max_terms=4, max_deg=3):
    out = Polynomial.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        t = Polynomial.const(c)
        for _ in range(draw(st.integers(0, max_deg))):
            t = t * poly(draw(_names))
        out = out + t
    return out


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=200, deadline=None)
@given(polys())
def test_parse_print_roundtrip(p):
    assert poly_parse(str(p)) == p


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), polys())
def test_substitution_is_homomorphism(p, q, s):
    vx = indeterminate("x")
    a = {vx: s}
    assert (p * q).substitute(a) == p.substitute(a) * q.substitute(a)
    assert (p + q).substitute(a) == p.substitute(a) + q.substitute(a)


@settings(max_examples=200, deadline=None)
@given(st.permutations([1, 2, 3, 4]))
def test_defect_b_skew_symmetry(perm):
    i, j, k = perm[:3]
    base = b_poly(i, j, k, 1)
    swapped = b_poly(j, i, k, 1)
    assert swapped == -base
