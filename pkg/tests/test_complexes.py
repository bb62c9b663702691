"""Tests for complex constructors, checks, duality and minimization."""

import pytest
from hypothesis import given, settings, strategies as st

from resolvent.ring import Polynomial, entry, poly_parse
from resolvent.complexes import (
    Complex3,
    build_2541,
    build_br_2442,
    build_split_exact,
    check_complex,
    complex_from_matrices,
    dualize,
    minimize,
)
from resolvent.tensor import basis_element, minor2


def test_br_2442_compositions_zero():
    C = build_br_2442()
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]
    assert C.format == (2, 4, 4, 2)


def test_br_2442_d2_alternating():
    C = build_br_2442()
    rows = C.d2.dense()
    for i in range(4):
        assert rows[i][i].is_zero()
        for j in range(4):
            assert rows[i][j] == -rows[j][i]


def test_br_2442_specialized_unit_matrix():
    C = build_br_2442([[1, 0, 0, 0], [0, 1, 0, 0]])
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]


def test_br_2442_d3_layout():
    C = build_br_2442()
    for h in (1, 2):
        img = C.d3.apply(basis_element(C.space(3), (h,)))
        for i in range(1, 5):
            assert img.coords.get((i,)) == entry("x", h, i)


def test_br_2442_relation_d3_on_minor_combinations():
    # d3(x_{2i} g1 - x_{1i} g2) has coefficient X_{ji} on f_j for j != i.
    C = build_br_2442()
    for i in range(1, 5):
        v = basis_element(C.space(3), (1,), entry("x", 2, i)) + basis_element(
            C.space(3), (2,), -entry("x", 1, i)
        )
        img = C.d3.apply(v)
        for j in range(1, 5):
            want = Polynomial.zero() if j == i else -minor2(C.d1, i, j)
            assert img.coords.get((j,), Polynomial.zero()) == want


def test_2541_compositions_and_d3():
    C = build_2541()
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]
    assert C.format == (2, 5, 4, 1)
    d3 = C.d3.dense()
    X23 = poly_parse("x12*x23 - x13*x22")
    X13 = poly_parse("x11*x23 - x13*x21")
    X12 = poly_parse("x11*x22 - x12*x21")
    assert [r[0] for r in d3] == [-X23, X13, -X12, -poly_parse("y")]


def test_2541_with_zero_hyperplane():
    C = build_2541(y=0)
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]


def test_split_exact_2552():
    C = build_split_exact((2, 5, 5, 2))
    assert C.format == (2, 5, 5, 2)
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]
    assert rep["ranks"] == (2, 3, 2)
    for i in range(1, 4):
        assert C.d2.apply(basis_element(C.space(2), (i,))) == basis_element(
            C.space(1), (i,)
        )
    assert C.d2.apply(basis_element(C.space(2), (4,))).is_zero()
    assert C.d2.apply(basis_element(C.space(2), (5,))).is_zero()
    for i in (1, 2):
        assert C.d3.apply(basis_element(C.space(3), (i,))) == basis_element(
            C.space(2), (i + 3,)
        )


def test_split_exact_2651():
    C = build_split_exact((2, 6, 5, 1))
    assert C.format == (2, 6, 5, 1)
    assert C.d3.apply(basis_element(C.space(3), (1,))) == basis_element(
        C.space(2), (5,)
    )
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]


def test_split_exact_rejects_unknown_format():
    with pytest.raises(ValueError):
        build_split_exact((2, 4, 4, 2))


def test_dualize_involution():
    for C in (build_br_2442(), build_2541(), build_split_exact((2, 5, 5, 2))):
        D = dualize(dualize(C))
        assert D.spaces == C.spaces
        for i in (1, 2, 3):
            assert D.differential(i) == C.differential(i)


def test_dualize_reverses_format():
    C = build_2541()
    D = dualize(C)
    assert D.format == (1, 4, 5, 2)
    rep = check_complex(D)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]


def test_minimize_split_exact_to_zero():
    C = build_split_exact((2, 5, 5, 2))
    M = minimize(C)
    assert M.format == (0, 0, 0, 0)
    C = build_split_exact((2, 6, 5, 1))
    assert minimize(C).format == (0, 0, 0, 0)


def test_minimize_fixpoint_without_units():
    C = build_br_2442()
    M = minimize(C)
    assert M.format == C.format
    for i in (1, 2, 3):
        assert M.differential(i).dense() == C.differential(i).dense()


def test_minimize_preserves_compositions():
    # A non-minimal complex glued from a split pair and a generic block.
    C = complex_from_matrices(
        [["x", "y", 0, 1], [0, "x", "y", 0]],
        [[0, 0], [0, 0], [0, 0], [0, 0]],
        [[0], [0]],
    )
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]
    M = minimize(C)
    rep2 = check_complex(M)
    assert rep2["d1d2_zero"] and rep2["d2d3_zero"]
    assert M.format[0] == C.format[0] - 1
    M2 = minimize(M)
    assert M2.format == M.format


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_br_2442_composition_zero_specializations(vals):
    M = [vals[:4], vals[4:]]
    C = build_br_2442(M)
    rep = check_complex(C)
    assert rep["d1d2_zero"] and rep["d2d3_zero"]
