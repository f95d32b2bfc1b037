"""
Tests for the golden checks.
"""
from src import selftest
from src.selftest import GOLDEN_CHECKS, run_selftest


def test_all_golden_checks_pass():
    results = run_selftest()
    assert len(results) == len(GOLDEN_CHECKS)
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert failed == []


def test_failing_and_raising_checks_are_reported(mocker):
    def boom():
        raise RuntimeError("engine exploded")

    mocker.patch.object(selftest, "GOLDEN_CHECKS", [
        ("passes", lambda: ""),
        ("wrong value", lambda: "D = 2, expected 1"),
        ("raises", boom),
    ])
    results = run_selftest()
    assert [r.passed for r in results] == [True, False, False]
    assert results[1].detail == "D = 2, expected 1"
    assert results[2].detail == "RuntimeError: engine exploded"
