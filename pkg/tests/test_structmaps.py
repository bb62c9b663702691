"""Golden tables for the structure maps on the generic small formats,
plus the strict / best-effort lifting behavior on a concrete resolution."""

import pytest

from resolvent.cli import fixture_path, load_complex_file
from resolvent.complexes import build_2541, build_br_2442
from resolvent.ring import Polynomial, poly_parse
from resolvent.structmaps import (
    MAP_IDS,
    compute_structure_maps,
    map_spaces,
    verify_defining_equations,
)
from resolvent._solve import NoLiftError


def nonzero_entries(maps, mid):
    """All nonzero matrix entries of one map as {(word, key): printed}."""
    out = {}
    for word, col in maps[mid].cols.items():
        for key, p in col.items():
            if not p.is_zero():
                out[(word, key)] = str(p)
    return out


def expect(table):
    return {k: str(poly_parse(v)) for k, v in table.items()}


@pytest.fixture(scope="module")
def br_maps():
    C = build_br_2442()
    return compute_structure_maps(C, ids=["w31", "w21", "w11", "w2_2_1"])


@pytest.fixture(scope="module")
def maps_2541():
    return compute_structure_maps(build_2541())


def test_br_2442_w31_full_table(br_maps):
    got = nonzero_entries(br_maps, "w31")
    want = {}
    for cols, (r, sgn) in {
        (1, 2, 3): (4, 1), (1, 2, 4): (3, -1),
        (1, 3, 4): (2, 1), (2, 3, 4): (1, -1),
    }.items():
        want[((cols,), (r,))] = str(Polynomial.const(sgn))
    assert got == want


def test_br_2442_w21_values(br_maps):
    col = br_maps["w21"].cols[((1, 2), 1)]
    assert {k: str(p) for k, p in col.items()} == expect(
        {(1,): "x22", (2,): "-x12"})
    assert not br_maps["w21"].cols.get(((1, 2), 3), {})


def test_br_2442_w11(br_maps):
    got = nonzero_entries(br_maps, "w11")
    assert got == expect({(((1, 2, 3, 4),), (1, 1)): "1",
                          (((1, 2, 3, 4),), (2, 2)): "1"})


def test_br_2442_w2_2_1(br_maps):
    col = br_maps["w2_2_1"].cols[((1, 2, 3, 4), 1, 1)]
    assert {k: str(p) for k, p in col.items()} == expect({((1, 2),): "1"})
    assert not br_maps["w2_2_1"].cols.get(((1, 2, 3, 4), 1, 2), {})


def test_br_2442_defining_equations(br_maps):
    assert verify_defining_equations(br_maps) == []


def _w31_2541_expected():
    want = {}
    want[(((1, 2, 3),), (4,))] = "1"
    for i, j in ((1, 2), (1, 3), (2, 3)):
        want[(((i, j, 4),), (i,))] = "x2%d" % j
        want[(((i, j, 4),), (j,))] = "-x2%d" % i
        want[(((i, j, 5),), (i,))] = "-x1%d" % j
        want[(((i, j, 5),), (j,))] = "x1%d" % i
    for i in (1, 2, 3):
        want[(((i, 4, 5),), (i,))] = "-y"
    return want


def test_2541_w31_full_table(maps_2541):
    assert nonzero_entries(maps_2541, "w31") == expect(_w31_2541_expected())


def test_2541_w21_full_table(maps_2541):
    want = {
        ((((1, 2)), 3), (1,)): "-1",
        ((((1, 3)), 2), (1,)): "1",
        ((((2, 3)), 1), (1,)): "-1",
        (((4, 5), 4), (1,)): "-y",
    }
    for i in (1, 2, 3):
        want[(((i, 4), 4), (1,))] = "x2%d" % i
        want[(((i, 5), 4), (1,))] = "-x1%d" % i
    assert nonzero_entries(maps_2541, "w21") == expect(want)


def test_2541_w11_full_table(maps_2541):
    assert nonzero_entries(maps_2541, "w11") == expect({
        (((1, 2, 3, 4),), (1, 1)): "-1",
        (((1, 2, 3, 5),), (2, 1)): "-1",
    })


def test_2541_w3_2_1_alternating(maps_2541):
    want = {}
    full = (1, 2, 3, 4, 5)
    for i in (1, 2, 3):
        want[((full, i), (i, 1))] = str(Polynomial.const((-1) ** (i + 1)))
    assert nonzero_entries(maps_2541, "w3_2_1") == want


def test_2541_w2_2_2_value(maps_2541):
    assert nonzero_entries(maps_2541, "w2_2_2") == expect({
        (((1, 2, 3, 4, 5), 4), ((1, 1),)): "-2"})


def test_2541_all_other_entries_zero_exhaustively(maps_2541):
    """Every domain word not in the printed support gives the zero column."""
    support = {
        "w31": {w for (w, _k) in
                {(k[0], None) for k in _w31_2541_expected()}},
    }
    printed = {
        "w31": {k[0] for k in _w31_2541_expected()},
        "w21": {((1, 2), 3), ((1, 3), 2), ((2, 3), 1), ((4, 5), 4),
                ((1, 4), 4), ((2, 4), 4), ((3, 4), 4),
                ((1, 5), 4), ((2, 5), 4), ((3, 5), 4)},
        "w11": {((1, 2, 3, 4),), ((1, 2, 3, 5),)},
        "w3_2_1": {((1, 2, 3, 4, 5), i) for i in (1, 2, 3)},
        "w2_2_2": {((1, 2, 3, 4, 5), 4)},
    }
    C = maps_2541.complex
    for mid, keep in printed.items():
        for word in map_spaces(C, mid)[0].words():
            if word in keep:
                continue
            col = maps_2541[mid].cols.get(word, {})
            assert all(p.is_zero() for p in col.values()), (mid, word)


def test_2541_defining_equations(maps_2541):
    assert verify_defining_equations(maps_2541) == []


@pytest.fixture(scope="module")
def complex_A():
    return load_complex_file(fixture_path("example_3_3_A.json"))


@pytest.fixture(scope="module")
def maps_A_full(complex_A):
    return compute_structure_maps(complex_A)


def test_concrete_2651_best_effort_lift_log(maps_A_full):
    maps = maps_A_full
    assert maps.ids() == ["w31", "w21", "w11", "w3_2_2"]
    assert sorted(maps.lift_log) == ["w1_2_2", "w2_2_2"]
    assert maps.lift_log["w2_2_2"].startswith("cycle not liftable")
    assert maps.lift_log["w1_2_2"].startswith("cycle not liftable")


def test_concrete_2651_strict_raises(complex_A):
    with pytest.raises(NoLiftError):
        compute_structure_maps(
            complex_A, ids=["w31", "w21", "w11", "w3_2_2", "w2_2_2"])


def test_concrete_2651_defining_equations(maps_A_full):
    assert verify_defining_equations(maps_A_full) == []


def test_concrete_2651_w11_unit_entry(complex_A):
    maps = compute_structure_maps(complex_A, ids=["w31", "w21", "w11"])
    col = maps["w11"].cols[((1, 3, 4, 6),)]
    assert str(col[(1, 1)]) == "-1"


def test_map_ids_cover_all_builders():
    assert set(MAP_IDS) == {
        "w31", "w21", "w11", "w3_2_1", "w3_2_2",
        "w2_2_1", "w2_2_2", "w1_2_1", "w1_2_2", "w1_3",
    }
