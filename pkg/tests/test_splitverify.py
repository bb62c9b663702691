"""Certificates for the defect-variable identity suite over the split
exact complexes, including the non-vacuity (mutation) check."""

import pytest

from resolvent.splitverify import (
    RELATION_TAGS,
    certificate_json,
    enumerate_assignments,
    generic_v_table,
    mutated_v_table,
    verify_all,
    verify_relation,
)


@pytest.fixture(scope="module")
def v2552():
    return generic_v_table((2, 5, 5, 2))


@pytest.fixture(scope="module")
def v2651():
    return generic_v_table((2, 6, 5, 1))


@pytest.fixture(scope="module")
def cert2552(v2552):
    return verify_all((2, 5, 5, 2), v=v2552)


@pytest.fixture(scope="module")
def cert2651(v2651):
    return verify_all((2, 6, 5, 1), v=v2651)


def test_certificate_2552_all_pass(cert2552):
    assert cert2552["all_pass"] is True
    assert cert2552["failures"] == []
    assert cert2552["noncanonical_sampled"] == 117


def test_certificate_2651_all_pass(cert2651):
    assert cert2651["all_pass"] is True
    assert cert2651["failures"] == []
    assert cert2651["noncanonical_sampled"] == 135


def test_certificate_2651_skips_rank_two_identities(cert2651):
    skipped = {e["tag"] for e in cert2651["skipped"]}
    assert skipped == {"relw31_3", "relw31_4", "relw11_2",
                       "relw32_3", "relw12_2"}
    ran = {e["tag"] for e in cert2651["relations"]}
    assert ran == set(RELATION_TAGS) - skipped


def test_certificate_2552_runs_rank_two_identities(cert2552):
    ran = {e["tag"] for e in cert2552["relations"]}
    assert ran == set(RELATION_TAGS) - {"relw32_2", "relw12_1"}


def test_assignment_counts():
    assert len(enumerate_assignments("relw31_1", (2, 5, 5, 2))) == 40
    assert len(enumerate_assignments("relw32_2", (2, 6, 5, 1))) == 375
    assert enumerate_assignments("relw32_2", (2, 5, 5, 2)) == []


def test_mutation_is_detected(v2552):
    mut = mutated_v_table(v2552)
    cert = verify_all((2, 5, 5, 2), v=mut, fail_fast=True)
    assert cert["all_pass"] is False
    first = cert["failures"][0]
    assert first["tag"] == "relw11_1"
    assert first["difference"] == "2*b[1,2,3;1]"


def test_tag_filter_restricts_run(v2651):
    cert = verify_all((2, 6, 5, 1), v=v2651,
                      tags=("relw31_1", "relw31_2"))
    assert [e["tag"] for e in cert["relations"]] == ["relw31_1", "relw31_2"]
    assert cert["all_pass"] is True


def test_jobs_do_not_change_the_certificate(v2651):
    seq = verify_all((2, 6, 5, 1), v=v2651, tags=("relw11_1",))
    par = verify_all((2, 6, 5, 1), v=v2651, tags=("relw11_1",), jobs=4)
    assert certificate_json(seq) == certificate_json(par)


def test_certificate_is_deterministic(v2552):
    a = verify_all((2, 5, 5, 2), v=v2552, seed=3)
    b = verify_all((2, 5, 5, 2), v=v2552, seed=3)
    assert certificate_json(a) == certificate_json(b)


def test_single_relation_reports_terms(v2552):
    a = (4, 5, 1, 1)
    assert a in enumerate_assignments("relw31_1", (2, 5, 5, 2))
    res = verify_relation("relw31_1", a, v2552)
    assert res["pass"] is True
    assert res["difference"].is_zero()
    assert res["terms"] > 0


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        verify_all((2, 4, 4, 2))
