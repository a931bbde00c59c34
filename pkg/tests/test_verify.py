import pytest

import verify
from errors import UsageError
from verify import CHECKS, run_suite


def test_check_names_are_unique():
    names = [check.name for check in CHECKS]
    assert len(names) == len(set(names))


@pytest.mark.parametrize("name", ["small-table", "hierarchy", "terminal", "veronese"])
def test_fast_checks_pass(search, name):
    (result,) = run_suite(search=search, only=[name])
    assert result["name"] == name
    assert result["status"] == "pass", result["detail"]
    assert set(result) == {"name", "anchor", "status", "detail", "elapsed_sec"}


def test_shared_values_across_checks(search):
    results = run_suite(search=search, only=["small-table", "hierarchy", "terminal"])
    assert [item["status"] for item in results] == ["pass"] * 3
    assert "12, 15, 16, 19, 20, 21" in results[1]["detail"]


def test_quick_skips_slow_checks(search):
    results = run_suite(quick=True, search=search, only=["upto3-large", "affine-hp"])
    assert [item["status"] for item in results] == ["skipped", "skipped"]


def test_suite_names_share_checks(search):
    (result,) = run_suite("paper", search=search, only=["terminal"])
    assert result["status"] == "pass"


def test_unknown_suite_or_check():
    with pytest.raises(UsageError):
        run_suite("nightly")
    with pytest.raises(UsageError):
        run_suite(only=["no-such-check"])


@pytest.mark.slow
def test_properties_checks_affine_searches(search, monkeypatch):
    (result,) = run_suite(quick=True, search=search, only=["properties"])
    assert result["status"] == "pass", result["detail"]
    assert "12 affine searches" in result["detail"]
    monkeypatch.setattr(verify, "affine_monotone_bound", lambda q, d, m, r: -1)
    (result,) = run_suite(quick=True, search=search, only=["properties"])
    assert result["status"] == "fail"
    assert "affine monotone bound failed" in result["detail"]


@pytest.mark.slow
def test_quick_suite_passes(search):
    results = run_suite(quick=True, search=search)
    assert len(results) == len(CHECKS)
    assert all(item["status"] in ("pass", "skipped") for item in results), results


@pytest.mark.slow
def test_full_suite_passes(search):
    results = run_suite(search=search)
    assert all(item["status"] == "pass" for item in results), results
