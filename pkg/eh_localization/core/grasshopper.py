"""
The grasshopper: jumps a_1..a_k taken in some order, never landing in the
forbidden set M_i after the i-th jump.

Admissible budget sequences b = (|M_1|, ..., |M_{k-1}|) are the matching
sequences of a bipartite graph. This module decides matching three
independent ways, searches for jump orders by brute force, builds the
instances that defeat non-matching budgets, and handles the Bruhat-restricted
and signed variants.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from eh_localization.core.bruhat import (
    K_st,
    Permutation,
    all_permutations,
    as_permutation,
    bruhat_interval_below,
    length,
)
from eh_localization.core.exact_core import InternalConsistencyError, require
from eh_localization.core.symfun import (
    BudgetSequence,
    L_w_poly,
    R_w_poly,
    budget_sequences,
    validate_budget,
)
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("grasshopper")

Signs = Tuple[int, ...]


@dataclass(frozen=True)
class BipartiteBudgetGraph:
    """
    Upper class U = {(j, l) : 1 <= j <= l <= k-1}, lower class
    D = {(i, t) : 1 <= t <= b_i}, and (j, l) ~ (i, t) iff j <= i <= l.
    """

    k: int
    b: BudgetSequence
    upper: Tuple[Tuple[int, int], ...]
    lower: Tuple[Tuple[int, int], ...]

    def adjacent(self, u: Tuple[int, int], d: Tuple[int, int]) -> bool:
        return u[0] <= d[0] <= u[1]

    def neighbours(self, i: int) -> List[Tuple[int, int]]:
        """Upper vertices adjacent to every (i, t); independent of t."""
        return [u for u in self.upper if u[0] <= i <= u[1]]

    @property
    def edges(self) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
        return [(u, d) for u in self.upper for d in self.lower if self.adjacent(u, d)]


def build_graph(k: int, b: Sequence[int]) -> BipartiteBudgetGraph:
    require(k >= 2, f"need k >= 2, got {k}")
    b = validate_budget(b, k - 1)
    upper = tuple((j, l) for j in range(1, k) for l in range(j, k))
    lower = tuple((i, t) for i in range(1, k) for t in range(1, b[i - 1] + 1))
    return BipartiteBudgetGraph(k, b, upper, lower)


def maximum_matching_size(graph: BipartiteBudgetGraph) -> int:
    """
    Augmenting paths on the compressed graph: lower vertex i has capacity b_i,
    upper vertices have capacity 1.
    """
    owner: Dict[Tuple[int, int], int] = {}
    neighbours = {i: graph.neighbours(i) for i in range(1, graph.k)}

    def augment(i: int, visited: Set[Tuple[int, int]]) -> bool:
        for u in neighbours[i]:
            if u in visited:
                continue
            visited.add(u)
            if u not in owner or augment(owner[u], visited):
                owner[u] = i
                return True
        return False

    matched = 0
    for i in range(1, graph.k):
        for _ in range(graph.b[i - 1]):
            if not augment(i, set()):
                return matched
            matched += 1
    return matched


def is_matching_sequence(k: int, b: Sequence[int]) -> bool:
    """True if some matching of the budget graph covers the whole lower class."""
    graph = build_graph(k, b)
    return maximum_matching_size(graph) == len(graph.lower)


def hall_deficiency_count(k: int, P: Iterable[int]) -> int:
    """K(P): pairs 1 <= i <= j <= k-1 whose interval [i, j] meets P."""
    P = set(P)
    return sum(1 for i in range(1, k) for j in range(i, k) if any(i <= p <= j for p in P))


def _nonempty_subsets(k: int) -> Iterable[Tuple[int, ...]]:
    positions = range(1, k)
    subsets = [
        subset for size in range(1, k) for subset in itertools.combinations(positions, size)
    ]
    return sorted(subsets)


def violated_hall_set(k: int, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """The lexicographically first P with b_P > K(P), or None."""
    b = validate_budget(b, k - 1)
    for P in _nonempty_subsets(k):
        if sum(b[p - 1] for p in P) > hall_deficiency_count(k, P):
            return P
    return None


def hall_check(k: int, b: Sequence[int]) -> bool:
    """b_P <= K(P) for every nonempty P in {1..k-1}."""
    require(k >= 2, f"need k >= 2, got {k}")
    return violated_hall_set(k, b) is None


def perfect_hall_check(k: int, b: Sequence[int]) -> bool:
    """Interval sums b_s + ... + b_t >= binom(t-s+2, 2); only for |b| = binom(k,2)."""
    b = validate_budget(b, k - 1)
    require(sum(b) == math.comb(k, 2), f"|b| = {sum(b)} must equal binom({k},2)")
    return all(
        sum(b[s - 1 : t]) >= math.comb(t - s + 2, 2) for s in range(1, k) for t in range(s, k)
    )


def dominating_perfect(k: int, b: Sequence[int]) -> Optional[BudgetSequence]:
    """A perfect matching sequence >= b componentwise, raising the leftmost feasible entry."""
    b = list(validate_budget(b, k - 1))
    if not hall_check(k, b):
        return None
    while sum(b) < math.comb(k, 2):
        for i in range(k - 1):
            b[i] += 1
            if hall_check(k, b):
                break
            b[i] -= 1
        else:
            raise InternalConsistencyError(f"no feasible increment from matching sequence {b}")
    return tuple(b)


def eh_budget(k: int, v: int) -> BudgetSequence:
    """(1, 2, ..., v-1, v(k-v), k-v-1, ..., 2, 1)."""
    require(1 <= v <= k - 1, f"need 1 <= v <= k-1, got k={k} v={v}")
    b = tuple(range(1, v)) + (v * (k - v),) + tuple(range(k - v - 1, 0, -1))
    if not perfect_hall_check(k, b):
        raise InternalConsistencyError(f"{b} is not a perfect matching sequence")
    return b


@dataclass(frozen=True)
class GrasshopperInstance:
    """
    Jumps, forbidden sets and an optional Bruhat ceiling.

    Unsigned instances have k-1 forbidden sets and distinct jumps; signed
    instances have k forbidden sets and distinct positive jumps.
    """

    jumps: Tuple[int, ...]
    forbidden: Tuple[FrozenSet[int], ...]
    ceiling: Optional[Permutation] = None
    signed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "jumps", tuple(self.jumps))
        object.__setattr__(self, "forbidden", tuple(frozenset(m) for m in self.forbidden))
        k = len(self.jumps)
        require(k >= 1, "an instance needs at least one jump")
        require(len(set(self.jumps)) == k, f"jumps {list(self.jumps)} are not distinct")
        expected = k if self.signed else k - 1
        require(
            len(self.forbidden) == expected,
            f"need {expected} forbidden sets for {k} jumps, got {len(self.forbidden)}",
        )
        if self.signed:
            require(
                all(a > 0 for a in self.jumps),
                f"signed jumps must be positive, got {list(self.jumps)} (a zero jump makes "
                "a tangent weight vanish)",
            )
        if self.ceiling is not None:
            object.__setattr__(self, "ceiling", as_permutation(self.ceiling))
            require(self.ceiling.size == k, f"ceiling {self.ceiling} is not in S_{k}")

    @property
    def k(self) -> int:
        return len(self.jumps)

    @property
    def budget(self) -> BudgetSequence:
        return tuple(len(m) for m in self.forbidden)

    def warnings(self) -> List[str]:
        """Unsigned forbidden sets that contain 0 or the total s; the theorems exclude them."""
        if self.signed:
            return []
        total = sum(self.jumps)
        messages = []
        for index, m in enumerate(self.forbidden, start=1):
            for bad, label in ((0, "0"), (total, f"s={total}")):
                if bad in m:
                    messages.append(f"M_{index} contains {label}")
        return messages

    def to_dict(self) -> Dict[str, Any]:
        record = {
            "jumps": list(self.jumps),
            "forbidden": [sorted(m) for m in self.forbidden],
            "signed": self.signed,
        }
        if self.ceiling is not None:
            record["ceiling"] = list(self.ceiling.values)
        return record


def _jump_order(jumps: Sequence[int]) -> List[int]:
    """Indices of the jumps, largest |a| first."""
    return sorted(range(len(jumps)), key=lambda i: (-abs(jumps[i]), -jumps[i]))


def _prefixes(perms: Iterable[Permutation]) -> Set[Tuple[int, ...]]:
    prefixes = set()
    for perm in perms:
        for cut in range(len(perm.values) + 1):
            prefixes.add(perm.values[:cut])
    return prefixes


def _lands_clear(instance: GrasshopperInstance, order: Sequence[int]) -> bool:
    position = 0
    for step, index in enumerate(order[: len(instance.forbidden)]):
        position += instance.jumps[index]
        if position in instance.forbidden[step]:
            return False
    return True


def grasshopper_search(instance: GrasshopperInstance) -> Optional[Permutation]:
    """
    A permutation pi whose partial sums a_pi(1) + ... + a_pi(i) avoid M_i, or None.

    The identity order is tried first; otherwise a depth-first search over
    prefixes takes the largest jumps first and prunes on forbidden partial sums.
    With a ceiling w only pi <= w in the Bruhat order are explored.
    """
    require(not instance.signed, "use signed_search for signed instances")
    k = instance.k
    allowed = None
    if instance.ceiling is not None:
        allowed = _prefixes(bruhat_interval_below(instance.ceiling))
    identity = list(range(k))
    if _lands_clear(instance, identity) and (allowed is None or tuple(range(1, k + 1)) in allowed):
        return Permutation.identity(k)
    order = _jump_order(instance.jumps)
    used = [False] * k
    chosen: List[int] = []

    def extend(position: int) -> bool:
        step = len(chosen)
        if step == k:
            return True
        for index in order:
            if used[index]:
                continue
            if allowed is not None and tuple(i + 1 for i in chosen) + (index + 1,) not in allowed:
                continue
            landing = position + instance.jumps[index]
            if step < k - 1 and landing in instance.forbidden[step]:
                continue
            used[index] = True
            chosen.append(index)
            if extend(landing):
                return True
            chosen.pop()
            used[index] = False
        return False

    if extend(0):
        return Permutation.of([i + 1 for i in chosen])
    return None


def adversarial_instance(k: int, P: Sequence[int], b: Sequence[int]) -> GrasshopperInstance:
    """
    Jumps a_i = i with interval forbidden sets that trap every order when b_P > K(P).

    M_{p_i} = [x_i, x_i + b_{p_i} - 1] with
    x_i = sum_{j<i} binom(n_j + 1, 2) + sum_{j<i} b_{p_j}, n_0 = p_1 and
    n_j = p_{j+1} - p_j. The other M_i are filled with negative integers,
    which no partial sum of positive jumps reaches.
    """
    b = validate_budget(b, k - 1)
    P = sorted(set(P))
    require(
        bool(P) and all(1 <= p <= k - 1 for p in P),
        f"P = {P} must be a nonempty subset of 1..{k - 1}",
    )
    b_P = sum(b[p - 1] for p in P)
    require(
        b_P > hall_deficiency_count(k, P),
        f"b_P = {b_P} <= K(P) = {hall_deficiency_count(k, P)}; nothing to defeat",
    )
    forbidden: List[FrozenSet[int]] = [frozenset(range(-b[i], 0)) for i in range(k - 1)]
    gaps = [P[0]] + [P[j + 1] - P[j] for j in range(len(P) - 1)]
    start = 0
    for index, p in enumerate(P):
        start += math.comb(gaps[index] + 1, 2)
        forbidden[p - 1] = frozenset(range(start, start + b[p - 1]))
        start += b[p - 1]
    return GrasshopperInstance(tuple(range(1, k + 1)), tuple(forbidden))


def bruhat_condition(w, b: Sequence[int]) -> bool:
    """sum_{i=s}^t b_i >= K_{s,t}(w) for all 1 <= s <= t <= k-1."""
    w = as_permutation(w)
    k = w.size
    b = validate_budget(b, k - 1)
    require(sum(b) == length(w), f"|b| = {sum(b)} must equal l(w) = {length(w)}")
    return all(sum(b[s - 1 : t]) >= K_st(w, s, t) for s in range(1, k) for t in range(s, k))


def bruhat_search(instance: GrasshopperInstance) -> Optional[Permutation]:
    """``grasshopper_search`` restricted to pi <= ceiling; needs |b| = l(ceiling)."""
    require(instance.ceiling is not None, "bruhat_search needs a ceiling permutation")
    require(
        sum(instance.budget) == length(instance.ceiling),
        f"|b| = {sum(instance.budget)} must equal l(w) = {length(instance.ceiling)}",
    )
    return grasshopper_search(instance)


def signed_condition(k: int, b: Sequence[int]) -> bool:
    """
    Interval sums over 1..k-1 at least binom(j-i+2, 2), and tails
    b_i + ... + b_k at least (k-i+1)^2, with |b| = k^2.
    """
    b = validate_budget(b, k)
    require(sum(b) == k * k, f"|b| = {sum(b)} must equal k^2 = {k * k}")
    intervals = all(
        sum(b[i - 1 : j]) >= math.comb(j - i + 2, 2) for i in range(1, k) for j in range(i, k)
    )
    tails = all(sum(b[i - 1 :]) >= (k - i + 1) ** 2 for i in range(1, k + 1))
    return intervals and tails


def signed_search(instance: GrasshopperInstance) -> Optional[Tuple[Permutation, Signs]]:
    """(pi, s) whose signed partial sums s_1 a_pi(1) + ... + s_i a_pi(i) avoid M_i, or None."""
    require(instance.signed, "signed_search needs a signed instance")
    k = instance.k
    order = _jump_order(instance.jumps)
    used = [False] * k
    chosen: List[int] = []
    signs: List[int] = []

    def extend(position: int) -> bool:
        step = len(chosen)
        if step == k:
            return True
        for index in order:
            if used[index]:
                continue
            for sign in (1, -1):
                landing = position + sign * instance.jumps[index]
                if landing in instance.forbidden[step]:
                    continue
                used[index] = True
                chosen.append(index)
                signs.append(sign)
                if extend(landing):
                    return True
                signs.pop()
                chosen.pop()
                used[index] = False
        return False

    if extend(0):
        return Permutation.of([i + 1 for i in chosen]), tuple(signs)
    return None


def _reachable(jumps: Sequence[int], steps: int, signed: bool) -> List[int]:
    sums = set()
    for subset in itertools.combinations(jumps, steps):
        if signed:
            for signs in itertools.product((1, -1), repeat=steps):
                sums.add(sum(s * a for s, a in zip(signs, subset)))
        else:
            sums.add(sum(subset))
    return sorted(sums)


def random_instance(
    rng: random.Random,
    b: Sequence[int],
    jump_range: int = 20,
    signed: bool = False,
    ceiling=None,
) -> GrasshopperInstance:
    """
    Random distinct jumps (in [-jump_range, jump_range] minus 0, or [1, jump_range]
    when signed) and forbidden sets of the requested sizes.

    M_i is drawn from the partial sums reachable after i jumps and topped up
    with unreachable integers when those run out. Unsigned draws avoid 0 and
    the total; signed positions have no excluded values.
    """
    k = len(b) if signed else len(b) + 1
    pool = list(range(1, jump_range + 1))
    if not signed:
        pool += [-a for a in pool]
    require(len(pool) >= k, f"jump range {jump_range} too small for {k} jumps")
    jumps = tuple(rng.sample(pool, k))
    excluded = set() if signed else {0, sum(jumps)}
    forbidden = []
    for step, size in enumerate(b, start=1):
        reachable = [x for x in _reachable(jumps, step, signed) if x not in excluded]
        chosen = rng.sample(reachable, min(size, len(reachable)))
        filler = 1 + max(abs(a) for a in jumps) * k
        while len(chosen) < size:
            chosen.append(filler)
            filler += 1
        forbidden.append(frozenset(chosen))
    return GrasshopperInstance(jumps, tuple(forbidden), ceiling=ceiling, signed=signed)


def bruhat_existence_scan(k: int) -> Dict[str, Any]:
    """
    Every w in S_k has some b with |b| = l(w) and coef(R_w, v^b) != 0, and every
    matching b has some w with l(w) = |b| and coef(R_w, v^b) != 0.
    """
    require(k >= 2, f"need k >= 2, got {k}")
    supports = {w: R_w_poly(w).support() for w in all_permutations(k)}
    empty_w = [str(w) for w, support in supports.items() if not support]
    uncovered = []
    matching = 0
    for total in range(math.comb(k, 2) + 1):
        for b in budget_sequences(total, k - 1):
            if not is_matching_sequence(k, b):
                continue
            matching += 1
            if not any(b in supports[w] for w in supports if length(w) == total):
                uncovered.append(list(b))
    return {
        "k": k,
        "permutations": len(supports),
        "matching_sequences": matching,
        "permutations_without_support": empty_w,
        "matching_without_permutation": uncovered,
        "holds": not empty_w and not uncovered,
    }


def bruhat_support_table(w) -> Dict[str, Any]:
    """For every |b| = l(w): the K_{s,t} condition and the two coefficient supports."""
    w = as_permutation(w)
    R, L = R_w_poly(w), L_w_poly(w)
    rows = []
    for b in budget_sequences(length(w), w.size - 1):
        rows.append(
            {
                "b": list(b),
                "condition": bruhat_condition(w, b),
                "R_w": R.coefficient(b),
                "L_w": L.coefficient(b),
            }
        )
    agree = all(row["condition"] == bool(row["R_w"]) == bool(row["L_w"]) for row in rows)
    return {"w": list(w.values), "length": length(w), "rows": rows, "agree": agree}


def bruhat_sharpness_scan(k: int, trials: int, seed: int = 0) -> Dict[str, Any]:
    """
    For each (w, b) failing the K_{s,t} condition, search ``trials`` random
    instances below w and count how many defeat the grasshopper. Nothing is asserted.
    """
    rng = random.Random(seed)
    rows = []
    for w in all_permutations(k):
        for b in budget_sequences(length(w), k - 1):
            if bruhat_condition(w, b):
                continue
            defeated = sum(
                1
                for _ in range(trials)
                if bruhat_search(random_instance(rng, b, ceiling=w)) is None
            )
            rows.append({"w": list(w.values), "b": list(b), "trials": trials, "defeated": defeated})
    logger.info(f"bruhat sharpness scan k={k}: {len(rows)} failing pairs sampled")
    defeated_pairs = sum(1 for row in rows if row["defeated"])
    return {"k": k, "seed": seed, "pairs": rows, "pairs_with_defeat": defeated_pairs}
