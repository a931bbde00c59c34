import pytest

from bounds import (
    Certificate,
    affine_monotone_bound,
    compare_report,
    delta,
    er_upto3_formula,
    hp_value,
    ore_bound,
    refutation_scan,
    serre_bound,
    tbc_bound,
    tbc_simplified,
    terminal_er,
    zanella_bound,
)
from errors import HypothesisViolated, RankOutOfRange, UsageError


@pytest.mark.parametrize(
    "args, expected",
    [((4, 2, 3, 5), 10), ((4, 2, 2, 1), 9), ((4, 2, 2, 3), 5), ((4, 2, 3, 3), 22), ((5, 2, 3, 5), 12)],
)
def test_tbc_bound(args, expected):
    assert tbc_bound(*args) == expected


@pytest.mark.parametrize("q", [4, 5, 7, 8])
def test_tbc_closed_form_agrees(q):
    for d in range(1, 6):
        for m in range(1, 5):
            for r in range(1, m + 2):
                assert tbc_bound(q, d, m, r) == tbc_simplified(q, d, m, r)


def test_tbc_simplified_range():
    with pytest.raises(RankOutOfRange):
        tbc_simplified(4, 2, 2, 4)
    with pytest.raises(UsageError):
        tbc_bound(4, 0, 2, 1)


def test_delta():
    assert [delta(j) for j in range(4)] == [1, 3, 6, 10]


@pytest.mark.parametrize("q, m, r, expected", [(4, 3, 5, 9), (5, 3, 5, 11), (4, 2, 6, 0), (4, 2, 1, 9)])
def test_zanella_bound(q, m, r, expected):
    assert zanella_bound(q, m, r) == expected


def test_zanella_range():
    with pytest.raises(RankOutOfRange):
        zanella_bound(4, 3, 11)


def test_single_form_bounds():
    assert serre_bound(4, 2, 2) == 9
    assert serre_bound(4, 1, 3) == 21
    assert ore_bound(4, 2, 2) == 8
    with pytest.raises(HypothesisViolated):
        serre_bound(4, 6, 2)
    with pytest.raises(HypothesisViolated):
        ore_bound(4, 5, 2)


def test_affine_values():
    assert hp_value(5, 2, 2, 3) == 5
    assert hp_value(4, 2, 2, 1) == 8
    assert affine_monotone_bound(4, 2, 2, 2) == 7
    with pytest.raises(HypothesisViolated):
        hp_value(4, 4, 2, 1)
    with pytest.raises(HypothesisViolated):
        hp_value(4, 2, 2, 4)


def test_terminal_and_upto3():
    assert [terminal_er(4, 2, 2, s) for s in range(3)] == [0, 1, 2]
    assert [er_upto3_formula(4, 2, 2, r) for r in (1, 2, 3)] == [9, 6, 5]
    with pytest.raises(HypothesisViolated):
        terminal_er(4, 3, 2, 0)
    with pytest.raises(HypothesisViolated):
        er_upto3_formula(4, 2, 2, 4)
    with pytest.raises(HypothesisViolated):
        er_upto3_formula(4, 2, 1, 1)


def _by_name(reports):
    return {rep.name: rep for rep in reports}


def test_compare_report_refutes_at_five_quadrics():
    reports = _by_name(compare_report(4, 2, 3, 5))
    assert reports["tbc"].value == 10
    assert reports["zanella"].value == 9
    assert not reports["serre"].applicable
    verdict = reports["tbc_verdict"]
    assert verdict.reason.startswith("TBC refuted at (d,m,r)=(2,3,5)")
    assert "e_r <= 9 < T_r = 10" in verdict.reason


def test_compare_report_consistent():
    reports = _by_name(compare_report(4, 2, 2, 1, [Certificate("search", 9)]))
    assert reports["exact:search"].value == 9
    assert reports["tbc_verdict"].reason.startswith("consistent")


def test_compare_report_conflicting():
    reports = _by_name(compare_report(4, 2, 2, 1, [Certificate("search", 8)]))
    assert reports["tbc_verdict"].reason.startswith("conflicting")


def test_compare_report_lower_certificate():
    reports = _by_name(compare_report(4, 2, 3, 4, [Certificate("witness", 21, "lower")]))
    assert reports["lower:witness"].applicable
    assert reports["tbc_verdict"].reason.startswith("open")


def test_compare_report_outside_conjecture():
    verdict = _by_name(compare_report(4, 3, 2, 1))["tbc_verdict"]
    assert not verdict.applicable


def test_compare_report_documents():
    for rep in compare_report(5, 2, 2, 2):
        doc = rep.to_dict()
        assert set(doc) == {"name", "value", "applicable", "reason"}
        if not rep.applicable and rep.name != "tbc_verdict":
            assert doc["value"] is None and doc["reason"]


def test_refutation_scan():
    assert refutation_scan(4, 3) == [5]
    assert refutation_scan(5, 3) == [5]
    assert refutation_scan(4, 4) == [6, 7, 10]
    with pytest.raises(HypothesisViolated):
        refutation_scan(3, 3)
