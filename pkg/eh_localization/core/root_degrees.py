"""
Root data for GL(n)/SL(n) and Sp(2n), the Borel-Hirzebruch degree formula,
and the closed-form degrees it must reproduce.

Weights are integer tuples (lambda_1, ..., lambda_n) on the basis L_1..L_n.
GL(n) weights are not normalized to sum zero; every pairing only uses
differences, so the normalization never matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Literal, Optional, Sequence, Tuple

from eh_localization.core.exact_core import exact_integer, multinomial, require
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("root_degrees")

Weight = Tuple[int, ...]
IndexSet = Tuple[int, ...]
Family = Literal["A", "C"]


@dataclass(frozen=True)
class RootSystemSpec:
    family: Family
    n: int

    def __post_init__(self):
        require(self.family in ("A", "C"), f"unknown family {self.family!r}")
        require(self.n >= 1, f"rank parameter must be >= 1, got {self.n}")


@dataclass(frozen=True, order=True)
class Root:
    """
    L_i - L_j (``plus=False``, i < j) or L_i + L_j (``plus=True``, i <= j).

    The long root 2L_i of type C is L_i + L_i. Indices are 1-based.
    """

    i: int
    j: int
    plus: bool = False

    def __post_init__(self):
        require(1 <= self.i <= self.j, f"bad root indices ({self.i}, {self.j})")
        require(self.plus or self.i < self.j, "L_i - L_i is not a root")

    def __str__(self):
        if not self.plus:
            return f"L{self.i}-L{self.j}"
        if self.i == self.j:
            return f"2L{self.i}"
        return f"L{self.i}+L{self.j}"


@dataclass(frozen=True)
class RootData:
    positive_roots: Tuple[Root, ...]
    rho: Weight
    pairing: Callable[[Sequence[int], Root], int]


@dataclass(frozen=True)
class Degree:
    d: int
    degree: int


def coroot_pairing(weight: Sequence[int], root: Root) -> int:
    """<lambda, alpha^vee> with (L_i-L_j)^v = H_i-H_j, (L_i+L_j)^v = H_i+H_j, (2L_i)^v = H_i."""
    a, b = weight[root.i - 1], weight[root.j - 1]
    if not root.plus:
        return a - b
    if root.i == root.j:
        return a
    return a + b


def root_data(spec: RootSystemSpec) -> RootData:
    n = spec.n
    roots: List[Root] = [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if spec.family == "A":
        rho = tuple(n - i for i in range(1, n + 1))
    else:
        roots += [Root(i, j, plus=True) for i in range(1, n + 1) for j in range(i, n + 1)]
        rho = tuple(n - i + 1 for i in range(1, n + 1))
    return RootData(tuple(roots), rho, coroot_pairing)


def is_dominant(spec: RootSystemSpec, weight: Sequence[int]) -> bool:
    if len(weight) != spec.n:
        return False
    decreasing = all(a >= b for a, b in zip(weight, weight[1:]))
    if spec.family == "C":
        return decreasing and weight[-1] >= 0
    return decreasing


def bh_degree(spec: RootSystemSpec, weight: Sequence[int]) -> Degree:
    """
    Projective degree of the minimal orbit in P(Gamma_lambda).

    d! * prod over alpha in T_lambda of <lambda, alpha^v> / <rho, alpha^v>, where
    T_lambda are the positive roots not orthogonal to lambda.
    """
    weight = tuple(weight)
    require(is_dominant(spec, weight), f"weight {weight} is not dominant for {spec}")
    data = root_data(spec)
    support = [root for root in data.positive_roots if data.pairing(weight, root)]
    require(support, f"weight {weight} pairs to zero with every positive root")
    d = len(support)
    value = Fraction(math.factorial(d))
    for root in support:
        value *= Fraction(data.pairing(weight, root), data.pairing(data.rho, root))
    degree = exact_integer(value, f"Borel-Hirzebruch degree of {weight}")
    logger.debug(f"bh_degree {spec.family}{spec.n} {weight}: d={d} degree={degree}")
    return Degree(d, degree)


def grassmannian_degree(n: int, k: int) -> int:
    """Degree of the Pluecker embedding of Gr_k(C^n)."""
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    value = Fraction(math.factorial(k * (n - k)))
    for i in range(1, k + 1):
        value *= Fraction(math.factorial(i - 1), math.factorial(n - i))
    return exact_integer(value, f"deg Gr_{k}(C^{n})")


def segre_degree(r: int, s: int) -> int:
    """Degree of the Segre embedding of P^{r-1} x P^{s-1}."""
    require(r >= 1 and s >= 1, f"need r, s >= 1, got r={r} s={s}")
    return math.comb(r + s - 2, r - 1)


def validate_indexset(index_set: Sequence[int], n: Optional[int] = None) -> IndexSet:
    index_set = tuple(index_set)
    require(len(index_set) >= 1, "an index set needs at least one element")
    require(index_set[0] >= 1, f"index set {index_set} has entries below 1")
    require(
        all(a < b for a, b in zip(index_set, index_set[1:])),
        f"index set {index_set} is not strictly increasing",
    )
    if n is not None:
        require(index_set[-1] <= n, f"index set {index_set} exceeds n={n}")
    return index_set


def schubert_degree(index_set: Sequence[int]) -> Degree:
    """Dimension and Pluecker degree of the Schubert variety sigma_I."""
    index_set = validate_indexset(index_set)
    k = len(index_set)
    dim = sum(index_set) - k * (k + 1) // 2
    value = Fraction(math.factorial(dim))
    for entry in index_set:
        value /= math.factorial(entry - 1)
    for i in range(k):
        for j in range(i + 1, k):
            value *= index_set[j] - index_set[i]
    return Degree(dim, exact_integer(value, f"deg sigma_{index_set}"))


def partition_to_indexset(partition: Sequence[int], n: int, k: int) -> IndexSet:
    """I_j = n - k + j - lambda_j for lambda inside the k x (n-k) rectangle."""
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    require(len(partition) <= k, f"partition {list(partition)} has more than {k} parts")
    parts = list(partition) + [0] * (k - len(partition))
    require(all(p >= 0 for p in parts), f"negative part in {parts}")
    require(all(a >= b for a, b in zip(parts, parts[1:])), f"{parts} is not a partition")
    require(not parts or parts[0] <= n - k, f"partition {parts} leaves the {k}x{n - k} box")
    return tuple(n - k + j - parts[j - 1] for j in range(1, k + 1))


def staircase_indexset(n: int, k: int) -> IndexSet:
    """Index set of the staircase Schubert variety in Gr_k(C^{2n}): I_j = 2(n-k+j)."""
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    return tuple(2 * (n - k + j) for j in range(1, k + 1))


def symplectic_grassmannian_dim(n: int, k: int) -> int:
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    return 2 * k * (n - k) + math.comb(k + 1, 2)


def _require_monotone(weight: Weight, strict: bool) -> None:
    pairs = list(zip(weight, weight[1:]))
    ok = all(a > b for a, b in pairs) if strict else all(a >= b for a, b in pairs)
    kind = "strictly decreasing" if strict else "weakly decreasing"
    require(ok, f"weight {weight} is not {kind}")


def partial_flag_degree(weight: Sequence[int]) -> Degree:
    """d! * prod over lambda_i > lambda_j of (lambda_i - lambda_j)/(j - i)."""
    weight = tuple(weight)
    require(len(weight) >= 1 and weight[-1] == 0, f"weight {weight} must end in 0")
    _require_monotone(weight, strict=False)
    pairs = [
        (i, j)
        for i in range(len(weight))
        for j in range(i + 1, len(weight))
        if weight[i] > weight[j]
    ]
    require(pairs, f"weight {weight} is constant")
    value = Fraction(math.factorial(len(pairs)))
    for i, j in pairs:
        value *= Fraction(weight[i] - weight[j], j - i)
    return Degree(len(pairs), exact_integer(value, f"partial flag degree of {weight}"))


def vandermonde(values: Sequence) -> object:
    """prod_{i<j} (x_j - x_i) over any ring the values live in."""
    result = 1
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            result = result * (values[j] - values[i])
    return result


def full_flag_degree_via_vandermonde(k: int, weight: Sequence[int]) -> int:
    """(-1)^binom(k,2) * binom(d; 0,1,...,k-1) * V(lambda) for the full flag of C^k."""
    weight = tuple(weight)
    require(len(weight) == k and k >= 2, f"need a weight of length k={k} >= 2")
    _require_monotone(weight, strict=True)
    require(weight[-1] == 0, f"weight {weight} must end in 0")
    d = math.comb(k, 2)
    sign = -1 if d % 2 else 1
    return sign * multinomial(d, list(range(k))) * vandermonde(weight)


def symplectic_flag_degree(k: int, weight: Sequence[int]) -> Degree:
    """Degree of the symplectic flag variety: d!/k! prod lambda_i prod (l_i^2-l_j^2)/(j^2-i^2)."""
    weight = tuple(weight)
    require(len(weight) == k and k >= 1, f"need a weight of length k={k} >= 1")
    _require_monotone(weight, strict=True)
    require(weight[-1] > 0, f"weight {weight} must be positive")
    d = k * k
    value = Fraction(math.factorial(d), math.factorial(k))
    for entry in weight:
        value *= entry
    for i in range(k):
        for j in range(i + 1, k):
            value *= Fraction(weight[i] ** 2 - weight[j] ** 2, (j + 1) ** 2 - (i + 1) ** 2)
    return Degree(d, exact_integer(value, f"symplectic flag degree of {weight}"))


def sun_weight(
    multiplicities: Sequence[int], size: int, levels: Optional[Sequence[int]] = None
) -> Weight:
    """(mu_1^{n_1}, ..., mu_t^{n_t}, 0^{size-n}) with mu_1 > ... > mu_t > 0."""
    require(all(m >= 1 for m in multiplicities), f"multiplicities {multiplicities} must be >= 1")
    n = sum(multiplicities)
    require(n <= size, f"multiplicities sum to {n} > {size}")
    t = len(multiplicities)
    levels = tuple(levels) if levels is not None else tuple(range(t, 0, -1))
    require(len(levels) == t, "need one level per multiplicity")
    _require_monotone(levels, strict=True)
    require(not levels or levels[-1] > 0, f"levels {levels} must be positive")
    weight: List[int] = []
    for level, count in zip(levels, multiplicities):
        weight += [level] * count
    return tuple(weight + [0] * (size - n))
