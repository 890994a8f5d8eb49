"""
Tests for budget characterizations, grasshopper searches and their variants.
"""

import math
import random

import pytest

from eh_localization.core.bruhat import Permutation, all_permutations, length
from eh_localization.core.exact_core import ContractViolation
from eh_localization.core.grasshopper import (
    GrasshopperInstance,
    adversarial_instance,
    bruhat_condition,
    bruhat_existence_scan,
    bruhat_search,
    bruhat_sharpness_scan,
    bruhat_support_table,
    build_graph,
    dominating_perfect,
    eh_budget,
    grasshopper_search,
    hall_check,
    hall_deficiency_count,
    is_matching_sequence,
    perfect_hall_check,
    random_instance,
    signed_condition,
    signed_search,
    violated_hall_set,
)
from eh_localization.core.symfun import K_b, Q_poly, budget_sequences
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("[TEST] grasshopper")


def test_budget_graph():
    graph = build_graph(3, (2, 0))
    assert graph.upper == ((1, 1), (1, 2), (2, 2))
    assert graph.lower == ((1, 1), (1, 2))
    assert len(graph.edges) == 4
    assert graph.neighbours(2) == [(1, 2), (2, 2)]


def test_small_characterizations():
    assert is_matching_sequence(3, (2, 1))
    assert hall_check(3, (2, 1))
    assert perfect_hall_check(3, (2, 1))
    assert not is_matching_sequence(3, (3, 0))
    assert not hall_check(3, (3, 0))
    assert violated_hall_set(3, (3, 0)) == (1,)
    assert violated_hall_set(3, (2, 1)) is None


def test_hall_deficiency_count():
    assert hall_deficiency_count(3, {1}) == 2
    assert hall_deficiency_count(3, {2}) == 2
    assert hall_deficiency_count(3, {1, 2}) == 3
    assert hall_deficiency_count(4, {2}) == 4


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_matching_equals_hall(k):
    for total in range(math.comb(k, 2) + 2):
        for b in budget_sequences(total, k - 1):
            assert is_matching_sequence(k, b) == hall_check(k, b), b


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_perfect_characterizations_agree(k):
    for b in budget_sequences(math.comb(k, 2), k - 1):
        matching = is_matching_sequence(k, b)
        assert perfect_hall_check(k, b) == matching, b
        assert (K_b(k, b) != 0) == matching, b


def test_dominating_perfect():
    assert dominating_perfect(3, (1, 1)) == (2, 1)
    assert dominating_perfect(3, (3, 0)) is None
    for b in budget_sequences(3, 3):
        top = dominating_perfect(4, b)
        if top is not None:
            assert sum(top) == 6
            assert perfect_hall_check(4, top)
            assert all(x >= y for x, y in zip(top, b))


def test_eh_budget():
    assert eh_budget(4, 2) == (1, 4, 1)
    assert eh_budget(2, 1) == (1,)
    assert eh_budget(5, 2) == (1, 6, 2, 1)
    with pytest.raises(ContractViolation):
        eh_budget(4, 4)


def test_instance_validation_and_warnings():
    with pytest.raises(ContractViolation):
        GrasshopperInstance((1, 1), (frozenset(),))
    with pytest.raises(ContractViolation):
        GrasshopperInstance((1, 2), ())
    with pytest.raises(ContractViolation):
        GrasshopperInstance((0, 1), (frozenset(), frozenset()), signed=True)
    instance = GrasshopperInstance((1, 2), (frozenset({0}),))
    assert instance.warnings() == ["M_1 contains 0"]
    instance = GrasshopperInstance((1, 2), (frozenset({3}),))
    assert instance.warnings() == ["M_1 contains s=3"]
    assert instance.budget == (1,)
    assert instance.to_dict() == {"jumps": [1, 2], "forbidden": [[3]], "signed": False}


def test_search_finds_and_fails():
    instance = GrasshopperInstance((1, 2), (frozenset({1}),))
    assert grasshopper_search(instance) == Permutation.of([2, 1])
    clear = GrasshopperInstance((1, 2, 3), (frozenset({5}), frozenset({7})))
    assert grasshopper_search(clear) == Permutation.identity(3)
    trapped = GrasshopperInstance((1, 2, 3), (frozenset({1, 2, 3}), frozenset()))
    assert grasshopper_search(trapped) is None


def test_search_handles_negative_jumps():
    instance = GrasshopperInstance((-3, 5, 1), (frozenset({-3}), frozenset({2})))
    order = grasshopper_search(instance)
    assert order is not None
    partial = 0
    for step, position in enumerate(order.values[:-1]):
        partial += instance.jumps[position - 1]
        assert partial not in instance.forbidden[step]


@pytest.mark.parametrize("k", [3, 4])
def test_matching_budgets_survive_random_instances(k):
    rng = random.Random(2024)
    for total in range(math.comb(k, 2) + 1):
        for b in budget_sequences(total, k - 1):
            if not is_matching_sequence(k, b):
                continue
            for _ in range(500):
                instance = random_instance(rng, b)
                assert grasshopper_search(instance) is not None, instance.to_dict()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_adversary_defeats_every_non_matching_budget(k):
    for total in range(math.comb(k, 2) + 2):
        for b in budget_sequences(total, k - 1):
            P = violated_hall_set(k, b)
            if P is None:
                continue
            instance = adversarial_instance(k, P, b)
            assert instance.budget == b
            assert grasshopper_search(instance) is None, (b, P)


def test_adversary_rejects_satisfied_set():
    with pytest.raises(ContractViolation):
        adversarial_instance(3, (1,), (2, 1))


def test_bruhat_condition_and_search():
    w = Permutation.of([2, 3, 1])
    assert bruhat_condition(w, (1, 1))
    assert bruhat_condition(w, (0, 2))
    assert not bruhat_condition(w, (2, 0))
    with pytest.raises(ContractViolation):
        bruhat_condition(w, (1, 2))
    found = bruhat_search(GrasshopperInstance((1, 2, 3), ({1}, {3}), ceiling=w))
    assert found == w
    blocked = GrasshopperInstance((1, 2, 3), ({1, 2}, set()), ceiling=w)
    assert bruhat_search(blocked) is None


@pytest.mark.parametrize("k", [3, 4])
def test_bruhat_condition_at_longest_is_perfect_hall(k):
    w0 = Permutation.longest(k)
    for b in budget_sequences(math.comb(k, 2), k - 1):
        assert bruhat_condition(w0, b) == perfect_hall_check(k, b)


def test_bruhat_support_tables_agree_in_S4():
    for w in all_permutations(4):
        table = bruhat_support_table(w)
        assert table["agree"], table
        assert table["length"] == length(w)


def test_bruhat_existence():
    for k in (2, 3, 4):
        assert bruhat_existence_scan(k)["holds"]


def test_bruhat_sharpness_scan_is_deterministic():
    first = bruhat_sharpness_scan(3, 5, seed=9)
    assert first == bruhat_sharpness_scan(3, 5, seed=9)
    assert all(not bruhat_condition(row["w"], row["b"]) for row in first["pairs"])


def test_signed_condition():
    assert signed_condition(2, (2, 2))
    assert not signed_condition(2, (4, 0))
    assert not signed_condition(2, (0, 4))
    for k in (1, 2, 3):
        Q = Q_poly(k)
        for b in budget_sequences(k * k, k):
            assert signed_condition(k, b) == (Q.coefficient(b) != 0), b


def test_signed_search():
    instance = GrasshopperInstance((5,), ({5},), signed=True)
    assert signed_search(instance) == (Permutation.of([1]), (-1,))
    trapped = GrasshopperInstance((5,), ({5, -5},), signed=True)
    assert signed_search(trapped) is None


SIGNED_BUDGETS = [
    b for k in (1, 2, 3) for b in budget_sequences(k * k, k) if signed_condition(k, b)
]


def test_signed_budget_counts():
    counts = {k: sum(1 for b in SIGNED_BUDGETS if len(b) == k) for k in (1, 2, 3)}
    assert counts == {1: 1, 2: 3, 3: 24}
    assert {(1, 3), (2, 2), (3, 1), (1, 3, 5), (2, 3, 4)} <= set(SIGNED_BUDGETS)


@pytest.mark.parametrize("b", SIGNED_BUDGETS, ids=str)
def test_signed_random_instances(b):
    k = len(b)
    rng = random.Random(7)
    for _ in range(200):
        instance = random_instance(rng, b, signed=True)
        assert instance.k == k
        assert signed_search(instance) is not None, instance.to_dict()


def test_signed_instances_may_forbid_the_total():
    rng = random.Random(3)
    instance = random_instance(rng, (0, 4), signed=True)
    total = sum(instance.jumps)
    assert total in instance.forbidden[-1]
    assert instance.warnings() == []
    unsigned = random_instance(rng, (0, 4))
    assert sum(unsigned.jumps) not in unsigned.forbidden[-1]
    assert 0 not in unsigned.forbidden[-1]
