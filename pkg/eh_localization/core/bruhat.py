"""
Permutations of {1..k} in one-line notation and the Bruhat order on them.

Inversions are position pairs (i, j), i < j, with w(i) > w(j). A cover
w < w' swaps the entries in positions i < j (w' = w * (i j)) and raises the
length by exactly one; the position pair labels the cover.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Sequence, Tuple

from eh_localization.core.exact_core import require
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("bruhat")

Inversion = Tuple[int, int]
Chain = Tuple["Permutation", ...]


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..k}, stored as the tuple (w(1), ..., w(k))."""

    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        require(
            sorted(self.values) == list(range(1, len(self.values) + 1)),
            f"{list(self.values)} is not a permutation of 1..{len(self.values)}",
        )

    @classmethod
    def of(cls, values: Sequence[int]) -> Permutation:
        return cls(tuple(values))

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def longest(cls, k: int) -> Permutation:
        return cls(tuple(range(k, 0, -1)))

    @property
    def size(self) -> int:
        return len(self.values)

    def __call__(self, position: int) -> int:
        return self.values[position - 1]

    def swap_positions(self, i: int, j: int) -> Permutation:
        values = list(self.values)
        values[i - 1], values[j - 1] = values[j - 1], values[i - 1]
        return Permutation(tuple(values))

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.values) + "]"


def as_permutation(w) -> Permutation:
    return w if isinstance(w, Permutation) else Permutation.of(w)


def inversions(w) -> FrozenSet[Inversion]:
    w = as_permutation(w)
    k = w.size
    return frozenset(
        (i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1) if w(i) > w(j)
    )


def length(w) -> int:
    return len(inversions(w))


def all_permutations(k: int) -> List[Permutation]:
    """S_k sorted by length, then lexicographically."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, k + 1))]
    return sorted(perms, key=lambda w: (length(w), w.values))


def cover_transpositions(w) -> List[Tuple[int, int, Permutation]]:
    """
    Every (i, j, w') with w' = w * (i j) covering w.

    The swap raises the length by one exactly when w(i) < w(j) and no position
    strictly between holds a value strictly between them.
    """
    w = as_permutation(w)
    result = []
    for i in range(1, w.size + 1):
        for j in range(i + 1, w.size + 1):
            low, high = w(i), w(j)
            if low > high:
                continue
            if any(low < w(m) < high for m in range(i + 1, j)):
                continue
            result.append((i, j, w.swap_positions(i, j)))
    return result


def covers(w) -> List[Permutation]:
    return [upper for _, _, upper in cover_transpositions(w)]


@lru_cache(maxsize=None)
def _upper_set(u: Permutation) -> FrozenSet[Permutation]:
    seen = {u}
    queue = deque([u])
    while queue:
        current = queue.popleft()
        for upper in covers(current):
            if upper not in seen:
                seen.add(upper)
                queue.append(upper)
    return frozenset(seen)


def bruhat_leq(u, w) -> bool:
    """u <= w in the Bruhat order, by upward search from u through covers."""
    u, w = as_permutation(u), as_permutation(w)
    require(u.size == w.size, f"size mismatch: {u} vs {w}")
    if length(u) > length(w):
        return False
    return w in _upper_set(u)


def bruhat_interval_below(w) -> List[Permutation]:
    """All u <= w, in length order."""
    w = as_permutation(w)
    return [u for u in all_permutations(w.size) if bruhat_leq(u, w)]


def bruhat_chains(w) -> List[Chain]:
    """Every maximal chain id = u_0 < u_1 < ... < u_l(w) = w, lexicographically ordered."""
    w = as_permutation(w)
    memo = {}

    def chains_from(u: Permutation) -> List[Chain]:
        if u == w:
            return [(w,)]
        if u in memo:
            return memo[u]
        found: List[Chain] = []
        for upper in covers(u):
            if bruhat_leq(upper, w):
                found.extend((u,) + tail for tail in chains_from(upper))
        memo[u] = found
        return found

    chains = sorted(chains_from(Permutation.identity(w.size)))
    logger.debug(f"{len(chains)} maximal chains below {w}")
    return chains


def chain_count(w) -> int:
    """Number of maximal chains, counted recursively without listing them."""
    w = as_permutation(w)

    @lru_cache(maxsize=None)
    def count_from(u: Permutation) -> int:
        if u == w:
            return 1
        return sum(count_from(upper) for upper in covers(u) if bruhat_leq(upper, w))

    return count_from(Permutation.identity(w.size))


def K_st(w, s: int, t: int) -> int:
    """Number of inversions (i, j) of w with s <= i < j <= t + 1."""
    w = as_permutation(w)
    require(1 <= s <= t <= w.size - 1, f"need 1 <= s <= t <= {w.size - 1}, got s={s} t={t}")
    return sum(1 for i, j in inversions(w) if s <= i and j <= t + 1)
