"""
Tests for sumsets mod p, the theorem checkers and the exhaustive scans.
"""

import pytest

from eh_localization.core.exact_core import ContractViolation
from eh_localization.core.sumsets import (
    check_cauchy_davenport,
    check_ddsh,
    check_signed_eh,
    check_signed_smallp,
    check_small_prime_full,
    check_sun,
    exhaustive_scan,
    extremal_scan,
    is_odd_progression,
    linear_restricted_sumset,
    residues,
    restricted_sumset,
    rotate,
    signed_extremal_count,
    signed_restricted_sumset,
    sumset,
    sun_d,
)
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("[TEST] sumsets")


def test_residues_and_rotate():
    assert residues([1, 9, 3], 7) == (1, 2, 3)
    with pytest.raises(ContractViolation):
        residues([1, 8], 7)
    assert rotate(1, 3, 7) == 8
    assert rotate(0b1000000, 1, 7) == 1
    with pytest.raises(ContractViolation):
        sumset([1], [1], 9)


def test_plain_and_restricted_sumsets():
    assert sumset([0, 1], [0, 1, 2], 7) == frozenset({0, 1, 2, 3})
    assert restricted_sumset([0, 1, 2, 3], 2, 7) == frozenset({1, 2, 3, 4, 5})
    assert restricted_sumset([0, 1, 2, 3], 0, 7) == frozenset({0})
    assert restricted_sumset([5, 6], 2, 7) == frozenset({4})


def test_signed_sumset():
    assert signed_restricted_sumset([1, 2, 3], 2, 7) == frozenset(range(1, 7))
    assert signed_restricted_sumset([1], 1, 7) == frozenset({1, 6})
    with pytest.raises(ContractViolation):
        signed_restricted_sumset([1, 6], 1, 7)
    with pytest.raises(ContractViolation):
        signed_restricted_sumset([0, 2], 1, 7)


def test_linear_sumset():
    assert linear_restricted_sumset([1, 2], [0, 1, 2], 7) == frozenset({1, 2, 4, 5})
    assert sun_d((1, 1), 3) == 3
    assert sun_d((2,), 4) == 4
    with pytest.raises(ContractViolation):
        linear_restricted_sumset([7, 1], [0, 1, 2], 7)


def test_cauchy_davenport_and_ddsh():
    verdict = check_cauchy_davenport(7, [0, 1], [0, 1, 2])
    assert (verdict.status, verdict.cardinality, verdict.bound) == ("pass", 4, 4)
    verdict = check_ddsh(7, [0, 1, 2, 3], 2)
    assert (verdict.status, verdict.cardinality, verdict.bound) == ("pass", 5, 5)
    assert verdict.notes["degree_unit_mod_p"] is True
    assert check_ddsh(7, [0, 1], 3).status == "skip"
    assert check_ddsh(7, [1, 8], 1).status == "skip"


def test_sun_verdicts():
    verdict = check_sun(7, [0, 1, 2], [1, 2])
    assert verdict.status == "pass"
    assert verdict.notes["d"] == 3
    assert verdict.cardinality == 4
    delta = check_sun(7, [0, 1, 2], [1, 6])
    assert delta.notes["tag"] == "delta"
    assert delta.notes["conjectured_bound"] == 2
    assert check_sun(5, [0, 1, 2, 3], [1, 2]).status == "skip"


def test_small_prime_full():
    assert check_small_prime_full(5, [0, 1, 2, 3], [1, 2, 3, 4]).status == "pass"
    assert check_small_prime_full(7, [0, 1, 2], [1, 2, 3]).status == "skip"


def test_signed_small_prime_flag():
    verdict = check_signed_smallp(7, [1, 2, 3], 2)
    assert verdict.status == "flag"
    assert verdict.notes["missing"] == [0]
    assert verdict.notes["zero_attained"] is False
    assert verdict.notes["d"] == 7


def test_signed_eh():
    verdict = check_signed_eh(11, [1, 2], 1)
    assert verdict.status == "pass"
    assert verdict.notes["d"] == 3
    assert check_signed_eh(11, [1, 10], 1).status == "skip"


def test_ddsh_scan_has_no_failures():
    report = exhaustive_scan("ddsh", [3, 5, 7])
    logger.info(f"ddsh scan: {report.to_dict()}")
    data = report.to_dict()
    assert data["fail"] == 0
    assert data["pass"] > 0
    assert not data["incomplete"]


def test_scan_budget_marks_incomplete():
    report = exhaustive_scan("ddsh", [7], budget=10)
    assert report.incomplete
    assert report.evaluations == 10


def test_cauchy_davenport_and_sun_scans():
    assert exhaustive_scan("cauchy_davenport", [5]).failures == 0
    sun = exhaustive_scan("sun", [7], max_n=2)
    assert sun.failures == 0
    assert sun.params["normalized"] is True


def test_signed_scans():
    assert exhaustive_scan("signed_eh", [11], max_size=4, max_n=3).failures == 0
    report = exhaustive_scan("signed_smallp", [7], max_n=2)
    assert report.failures == 0
    assert report.flags >= 1
    assert any(v.A == (1, 2, 3) and v.params["k"] == 2 for v in report.findings)


def test_unknown_theorem():
    with pytest.raises(ContractViolation):
        exhaustive_scan("goldbach", [7])


def test_extremal_scan():
    assert signed_extremal_count(3, 2) == 8
    assert signed_extremal_count(3, 1) == 6
    assert is_odd_progression([1, 3, 5], 17)
    assert not is_odd_progression([1, 2, 4], 17)
    result = extremal_scan(17, 3, 2)
    assert result["minimum"] == 8
    assert result["conjectured_minimum"] == 8
    assert not result["incomplete"]
    assert {"A": [1, 3, 5], "odd_progression": True} in result["minimizers"]
    assert result["progression_minimizers"] >= 1
