"""
Tests for the fixed-point sums and their random-substitution verification.
"""

import pytest

from eh_localization.core import localization
from eh_localization.core.exact_core import (
    ContractViolation,
    DegenerateSubstitutionError,
    PrimeField,
)
from eh_localization.core.localization import (
    MAX_DRAWS_PER_TRIAL,
    FixedPointSum,
    IdentityReport,
    coefficient_formula,
    grassmann_point_terms,
    grassmann_rhs,
    segre_rhs,
    symplectic_flag_terms,
    verify_identity,
)
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("[TEST] localization")

SPACES = [
    FixedPointSum("segre", r=1, s=4),
    FixedPointSum("segre", r=2, s=3),
    FixedPointSum("segre", r=3, s=3),
    FixedPointSum("grassmann", n=4, k=2),
    FixedPointSum("grassmann", n=5, k=2),
    FixedPointSum("grassmann", n=6, k=3),
    FixedPointSum("grassmann_schur", n=4, k=2, partition=(1,)),
    FixedPointSum("grassmann_schur", n=5, k=2, partition=(2, 1)),
    FixedPointSum("partial_flag", multiplicities=(1, 2)),
    FixedPointSum("partial_flag", multiplicities=(1, 2), weight=(2, 0)),
    FixedPointSum("partial_flag", multiplicities=(1, 1, 2)),
    FixedPointSum("partial_flag", multiplicities=(2, 1, 2)),
    FixedPointSum("partial_flag", multiplicities=(2, 1, 2), weight=(3, 1, 0)),
    FixedPointSum("full_flag", weight=(2, 1, 0)),
    FixedPointSum("full_flag", weight=(3, 2, 1, 0)),
    FixedPointSum("symplectic_flag", weight=(2, 1)),
    FixedPointSum("symplectic_flag", weight=(3, 2, 1)),
    FixedPointSum("derivative", n=3, k=1),
    FixedPointSum("derivative", n=4, k=0),
    FixedPointSum("derivative", n=4, k=2),
    FixedPointSum("derivative", n=5, k=3),
    FixedPointSum("staircase", n=2, k=1),
    FixedPointSum("staircase", n=2, k=2),
    FixedPointSum("staircase", n=3, k=2),
]


def _label(space):
    return "-".join(f"{key}={value}" for key, value in space.to_json().items())


def _values_for(space, modulus=0):
    if space.tag == "derivative":
        return []
    expected = space.expected()
    return [expected % modulus if modulus else expected]


@pytest.mark.parametrize(
    "space, expected",
    [
        (FixedPointSum("segre", r=1, s=4), 1),
        (FixedPointSum("segre", r=2, s=3), 3),
        (FixedPointSum("segre", r=3, s=3), 6),
        (FixedPointSum("grassmann", n=5, k=2), 5),
        (FixedPointSum("grassmann", n=6, k=3), 42),
        (FixedPointSum("grassmann_schur", n=4, k=2, partition=(1,)), 2),
        (FixedPointSum("partial_flag", multiplicities=(1, 2)), 1),
        (FixedPointSum("partial_flag", multiplicities=(1, 2), weight=(2, 0)), 4),
        (FixedPointSum("partial_flag", multiplicities=(1, 1, 2)), 40),
        (FixedPointSum("partial_flag", multiplicities=(2, 1, 2)), 2240),
        (FixedPointSum("partial_flag", multiplicities=(2, 1, 2), weight=(3, 1, 0)), 45360),
        (FixedPointSum("full_flag", weight=(2, 1, 0)), 6),
        (FixedPointSum("full_flag", weight=(3, 2, 1, 0)), 720),
        (FixedPointSum("symplectic_flag", weight=(2, 1)), 24),
        (FixedPointSum("symplectic_flag", weight=(3, 2, 1)), 362880),
        (FixedPointSum("staircase", n=2, k=1), 1),
        (FixedPointSum("staircase", n=2, k=2), -2),
    ],
)
def test_closed_forms(space, expected):
    assert space.expected() == expected


@pytest.mark.parametrize("space", SPACES, ids=_label)
def test_identity_holds_over_rationals(space):
    report = verify_identity(space, trials=100, seed=3)
    logger.info(f"{space.tag}: {report.to_dict()}")
    assert report.passed
    assert report.agreements == 100
    assert report.degenerate == 0
    assert report.draws == 100
    assert report.to_dict()["distinct_values"] == _values_for(space)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("space", SPACES, ids=_label)
def test_identity_holds_mod_p(space, p):
    if p < space.min_modulus():
        with pytest.raises(ContractViolation):
            verify_identity(space, trials=50, modulus=p, seed=p)
        return
    data = verify_identity(space, trials=50, modulus=p, seed=p).to_dict()
    assert data["field"] == f"GF({p})"
    assert data["passed"] is True
    assert data["agreements"] == 50
    assert data["mismatches"] == 0
    assert data["draws"] == 50 + data["degenerate"]
    assert data["distinct_values"] == _values_for(space, p)


def test_mod_p_redraws_degenerate_substitutions():
    # x_i = 0 and x_i = -x_j are both common mod 7
    space = FixedPointSum("symplectic_flag", weight=(2, 1))
    data = verify_identity(space, trials=50, modulus=7, seed=0).to_dict()
    assert data["degenerate"] > 0
    assert data["first_degenerate"]
    assert data["agreements"] == 50
    assert data["passed"] is True
    assert data["distinct_values"] == [24 % 7]


@pytest.mark.parametrize(
    "space",
    [
        FixedPointSum("derivative", n=6, k=1),
        FixedPointSum("grassmann", n=6, k=2),
        FixedPointSum("staircase", n=3, k=1),
        FixedPointSum("symplectic_flag", weight=(3, 2, 1)),
    ],
    ids=_label,
)
def test_too_small_prime_is_not_verifiable(space):
    with pytest.raises(ContractViolation, match="not verifiable over GF"):
        verify_identity(space, trials=10, modulus=5)


def test_small_prime_still_reaches_the_trial_count():
    report = verify_identity(FixedPointSum("grassmann", n=4, k=2), trials=50, modulus=5)
    assert report.agreements == 50
    assert report.passed
    assert report.to_dict()["distinct_values"] == [2]


def test_all_degenerate_run_does_not_pass(monkeypatch):
    def degenerate(space, sampler, field):
        raise DegenerateSubstitutionError(0, "x_1 = x_2")

    monkeypatch.setattr(localization, "_evaluate_once", degenerate)
    report = verify_identity(FixedPointSum("grassmann", n=4, k=2), trials=3, modulus=7)
    assert report.agreements == 0
    assert report.mismatches == 0
    assert report.draws == 3 * MAX_DRAWS_PER_TRIAL
    assert report.degenerate == report.draws
    assert report.first_degenerate == "x_1 = x_2"
    assert not report.passed
    assert report.to_dict()["passed"] is False


def test_passed_needs_every_requested_agreement():
    space = FixedPointSum("grassmann", n=4, k=2)
    report = IdentityReport(space, "GF(5)", 0, 2, trials=10, agreements=9)
    assert not report.passed
    report.agreements = 10
    assert report.passed
    report.mismatches = 1
    assert not report.passed


def test_trial_count_must_be_positive():
    with pytest.raises(ContractViolation):
        verify_identity(FixedPointSum("segre", r=2, s=2), trials=0)


def test_same_seed_same_report():
    space = FixedPointSum("segre", r=2, s=2)
    first = verify_identity(space, 5, seed=11).to_dict()
    assert first == verify_identity(space, 5, seed=11).to_dict()


def test_grassmann_rhs_direct():
    assert grassmann_rhs([1, 2, 3], 1, [10, 20]) == 1
    assert grassmann_rhs([1, 2, 3, 4], 2, [5, 6, 7, 8], PrimeField(101)) == 2
    with pytest.raises(ContractViolation):
        grassmann_rhs([1, 2, 3], 1, [10])


def test_repeated_values_are_degenerate():
    with pytest.raises(DegenerateSubstitutionError):
        segre_rhs([1, 1], [2], [0])


def test_grassmann_point_terms_single_survivor():
    terms = grassmann_point_terms(5, 2)
    assert len(terms) == 10
    nonzero = [t for t in terms if t["term"] != 0]
    assert nonzero == [{"J": [1, 2], "term": 5}]


def test_symplectic_term_count():
    terms = list(symplectic_flag_terms([3, 5], [2, 1], [7, 11, 13, 17]))
    assert len(terms) == 8
    assert sum(terms) == 24


def test_coefficient_formula_reads_a_coefficient():
    def f(point):
        (x,) = point
        return 3 * x * x + x + 5

    assert coefficient_formula(f, [[0, 1, 2]], [2]) == 3
    with pytest.raises(DegenerateSubstitutionError):
        coefficient_formula(f, [[0, 1, 1]], [2])


def test_unknown_space_is_rejected():
    with pytest.raises(ContractViolation):
        FixedPointSum("projective")
