"""
Tests for root data and the closed-form degree formulas.
"""

import itertools
import random

import pytest

from eh_localization.core.exact_core import ContractViolation
from eh_localization.core.root_degrees import (
    Degree,
    Root,
    RootSystemSpec,
    bh_degree,
    full_flag_degree_via_vandermonde,
    grassmannian_degree,
    partial_flag_degree,
    partition_to_indexset,
    root_data,
    schubert_degree,
    segre_degree,
    staircase_indexset,
    sun_weight,
    symplectic_flag_degree,
    symplectic_grassmannian_dim,
)


@pytest.mark.parametrize(("n", "k", "degree"), [(4, 2, 2), (5, 2, 5), (6, 3, 42), (5, 1, 1)])
def test_grassmannian_degree(n, k, degree):
    assert grassmannian_degree(n, k) == degree


def test_root_data():
    c2 = root_data(RootSystemSpec("C", 2))
    assert c2.rho == (2, 1)
    assert [str(root) for root in c2.positive_roots] == ["L1-L2", "2L1", "L1+L2", "2L2"]
    assert len(root_data(RootSystemSpec("A", 4)).positive_roots) == 6
    assert c2.pairing((2, 1), Root(1, 1, plus=True)) == 2


def test_bh_degree_examples():
    assert bh_degree(RootSystemSpec("C", 2), (1, 1)) == Degree(3, 2)
    assert bh_degree(RootSystemSpec("C", 2), (2, 1)).degree == 24
    with pytest.raises(ContractViolation):
        bh_degree(RootSystemSpec("A", 2), (0, 1))
    with pytest.raises(ContractViolation):
        bh_degree(RootSystemSpec("A", 3), (1, 1, 1))


def test_bh_matches_grassmannian():
    for n in range(2, 9):
        for k in range(1, n):
            weight = (1,) * k + (0,) * (n - k)
            assert bh_degree(RootSystemSpec("A", n), weight) == Degree(
                k * (n - k), grassmannian_degree(n, k)
            )


def test_bh_matches_partial_flag_on_random_weights():
    rng = random.Random(0)
    checked = 0
    while checked < 200:
        n = rng.randint(2, 6)
        weight = sorted((rng.randint(0, 4) for _ in range(n)), reverse=True)
        weight[-1] = 0
        if weight[0] == 0:
            continue
        assert bh_degree(RootSystemSpec("A", n), weight) == partial_flag_degree(weight)
        checked += 1


def test_bh_matches_symplectic_flag():
    for k in range(1, 5):
        for weight in itertools.combinations(range(5, 0, -1), k):
            assert bh_degree(RootSystemSpec("C", k), weight) == symplectic_flag_degree(k, weight)


def test_flag_degrees():
    assert partial_flag_degree((1, 0)) == Degree(1, 1)
    assert partial_flag_degree((1, 0, 0)) == Degree(2, 1)
    assert partial_flag_degree((2, 1, 0)).degree == 6
    assert full_flag_degree_via_vandermonde(3, (2, 1, 0)) == 6
    for weight in itertools.combinations(range(6, 0, -1), 3):
        weight = weight + (0,)
        assert full_flag_degree_via_vandermonde(4, weight) == partial_flag_degree(weight).degree
    assert symplectic_flag_degree(2, (2, 1)) == Degree(4, 24)
    with pytest.raises(ContractViolation):
        symplectic_flag_degree(2, (1, 1))


def test_schubert_and_index_sets():
    assert schubert_degree((3, 4)) == Degree(4, 2)
    assert partition_to_indexset((1,), 4, 2) == (2, 4)
    assert schubert_degree(partition_to_indexset((1,), 4, 2)) == Degree(3, 2)
    assert staircase_indexset(3, 2) == (4, 6)
    assert symplectic_grassmannian_dim(3, 2) == 7
    with pytest.raises(ContractViolation):
        partition_to_indexset((3,), 4, 2)


def test_segre_and_sun_weight():
    assert segre_degree(2, 2) == 2
    assert segre_degree(1, 4) == 1
    assert segre_degree(3, 3) == 6
    assert sun_weight((2, 1), 4) == (2, 2, 1, 0)
    assert sun_weight((1,), 3, levels=(5,)) == (5, 0, 0)
