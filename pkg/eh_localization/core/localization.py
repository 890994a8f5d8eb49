"""
Fixed-point sums of the ABBV type and their verification against closed-form degrees.

Every ``*_rhs`` function evaluates a rational-function sum exactly, term by
term, over a field object from ``exact_core``. A zero denominator raises
``DegenerateSubstitutionError`` naming the values that collided; it never
yields a wrong number.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dataclass_field
from typing import (
    Any,
    Callable,
    Dict,
    Iterator,
    List,
    Literal,
    Optional,
    Sequence,
    Tuple,
    get_args,
)

from eh_localization.core.exact_core import (
    DegenerateSubstitutionError,
    Field,
    FieldValue,
    PrimeField,
    RationalField,
    field_for,
    require,
)
from eh_localization.core.root_degrees import (
    full_flag_degree_via_vandermonde,
    grassmannian_degree,
    partial_flag_degree,
    partition_to_indexset,
    schubert_degree,
    segre_degree,
    staircase_indexset,
    symplectic_flag_degree,
    symplectic_grassmannian_dim,
    vandermonde,
)
from eh_localization.core.symfun import schur_eval
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("localization")

SpaceTag = Literal[
    "segre",
    "grassmann",
    "grassmann_schur",
    "partial_flag",
    "full_flag",
    "symplectic_flag",
    "derivative",
    "staircase",
]
SPACE_TAGS: Tuple[str, ...] = get_args(SpaceTag)

RATIONAL_SAMPLE_RANGE = (1, 10**6)
MAX_DRAWS_PER_TRIAL = 20


def _coerce_all(values: Sequence, field: Field) -> List[FieldValue]:
    return [field.coerce(v) for v in values]


def _require_distinct(values: Sequence[FieldValue], label: str) -> None:
    for i, j in itertools.combinations(range(len(values)), 2):
        if values[i] == values[j]:
            raise DegenerateSubstitutionError(
                values[i] - values[j], f"{label}_{i + 1} = {label}_{j + 1} = {values[i]!r}"
            )


def _dehomogenized(point: FieldValue, constants: Sequence[FieldValue], field: Field) -> FieldValue:
    result = field.one
    for m in constants:
        result = result * (point - m)
    return result


def segre_rhs(x: Sequence, y: Sequence, M: Sequence, field: Optional[Field] = None) -> FieldValue:
    """
    Fixed-point sum for P^{r-1} x P^{s-1} in its Segre embedding.

    sum_{i,j} prod_m (x_i + y_j - m) / [prod_{k != i} (x_i - x_k) * prod_{l != j} (y_j - y_l)]

    Args:
        x: r values, pairwise distinct
        y: s values, pairwise distinct
        M: r + s - 2 dehomogenizing constants

    Returns:
        The exact sum; binom(r+s-2, r-1) whenever the inputs are admissible.
    """
    field = field or RationalField()
    xs, ys, ms = _coerce_all(x, field), _coerce_all(y, field), _coerce_all(M, field)
    require(len(ms) == len(xs) + len(ys) - 2, f"|M| must be r+s-2 = {len(xs) + len(ys) - 2}")
    _require_distinct(xs, "x")
    _require_distinct(ys, "y")
    total = field.zero
    for i, xi in enumerate(xs):
        for j, yj in enumerate(ys):
            denominator = field.one
            for other, xk in enumerate(xs):
                if other != i:
                    denominator = denominator * (xi - xk)
            for other, yl in enumerate(ys):
                if other != j:
                    denominator = denominator * (yj - yl)
            numerator = _dehomogenized(xi + yj, ms, field)
            total = total + field.divide(numerator, denominator, f"fixed point ({i + 1}, {j + 1})")
    return total


def _grassmann_terms(
    xs: List[FieldValue], k: int, ms: List[FieldValue], field: Field, weight_of: Callable
) -> Iterator[Tuple[Tuple[int, ...], FieldValue]]:
    n = len(xs)
    for subset in itertools.combinations(range(n), k):
        inside = set(subset)
        point = field.zero
        for i in subset:
            point = point + xs[i]
        denominator = field.one
        for i in subset:
            for j in range(n):
                if j not in inside:
                    denominator = denominator * (xs[i] - xs[j])
        numerator = _dehomogenized(point, ms, field) * weight_of([xs[i] for i in subset])
        J = tuple(i + 1 for i in subset)
        yield J, field.divide(numerator, denominator, f"fixed point J={J}")


def grassmann_rhs(x: Sequence, k: int, M: Sequence, field: Optional[Field] = None) -> FieldValue:
    """sum over k-subsets J of prod_m (x_J - m) / prod_{i in J, j not in J} (x_i - x_j)."""
    field = field or RationalField()
    xs, ms = _coerce_all(x, field), _coerce_all(M, field)
    n = len(xs)
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    require(len(ms) == k * (n - k), f"|M| must be k(n-k) = {k * (n - k)}, got {len(ms)}")
    _require_distinct(xs, "x")
    total = field.zero
    for _, term in _grassmann_terms(xs, k, ms, field, lambda _: field.one):
        total = total + term
    return total


def grassmann_schur_rhs(
    x: Sequence, k: int, partition: Sequence[int], M: Sequence, field: Optional[Field] = None
) -> FieldValue:
    """
    The Grassmannian sum with each fixed point J weighted by s_lambda(x_j : j in J).

    Equals the degree of the Schubert variety whose partition is ``partition``
    when |M| = k(n-k) - |lambda|.
    """
    field = field or RationalField()
    xs, ms = _coerce_all(x, field), _coerce_all(M, field)
    n = len(xs)
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    partition_to_indexset(partition, n, k)
    dim = k * (n - k) - sum(partition)
    require(len(ms) == dim, f"|M| must be {dim}, got {len(ms)}")
    _require_distinct(xs, "x")
    total = field.zero
    for _, term in _grassmann_terms(
        xs, k, ms, field, lambda restricted: schur_eval(partition, restricted, field)
    ):
        total = total + term
    return total


def grassmann_point_terms(n: int, k: int) -> List[Dict[str, Any]]:
    """
    Per-fixed-point terms of the Grassmannian sum at x_i = i with the integers
    binom(k+1,2)+1 .. binom(k+1,2)+k(n-k) as M.

    Every x_J other than J = {1..k} lands inside M, so exactly one term survives.
    """
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    field = RationalField()
    base = math.comb(k + 1, 2)
    xs = _coerce_all(range(1, n + 1), field)
    ms = _coerce_all(range(base + 1, base + k * (n - k) + 1), field)
    return [
        {"J": list(J), "term": field.to_json(term)}
        for J, term in _grassmann_terms(xs, k, ms, field, lambda _: field.one)
    ]


def _block_pair_count(counts: Sequence[int]) -> int:
    return sum(a * b for a, b in itertools.combinations(counts, 2))


def ordered_set_partitions(
    indices: Sequence[int], sizes: Sequence[int]
) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Ordered partitions (I_1, ..., I_t) of ``indices`` with |I_l| = sizes[l]."""
    if not sizes:
        if not indices:
            yield ()
        return
    for block in itertools.combinations(indices, sizes[0]):
        chosen = set(block)
        rest = [i for i in indices if i not in chosen]
        for tail in ordered_set_partitions(rest, sizes[1:]):
            yield (block,) + tail


def flag_rhs(
    x: Sequence,
    mu: Sequence[int],
    multiplicities: Sequence[int],
    b_values: Sequence,
    field: Optional[Field] = None,
) -> FieldValue:
    """
    Fixed-point sum for the partial flag variety of type ``multiplicities``.

    The sum runs over ordered set partitions (I_1, ..., I_{t+1}) of the indices
    of ``x`` with |I_l| = n_l; each term is

        prod_b (sum_l mu_l x_{I_l} - b) / prod_{l < l'} prod_{i in I_l, j in I_l'} (x_i - x_j)

    where x_I is the sum of the x_i over I.
    """
    field = field or RationalField()
    xs, bs = _coerce_all(x, field), _coerce_all(b_values, field)
    require(len(mu) == len(multiplicities), "need one level per multiplicity")
    require(all(n >= 1 for n in multiplicities), f"multiplicities {list(multiplicities)} < 1")
    require(
        sum(multiplicities) == len(xs),
        f"multiplicities sum to {sum(multiplicities)}, but there are {len(xs)} values",
    )
    require(all(a > b for a, b in zip(mu, mu[1:])), f"levels {list(mu)} not strictly decreasing")
    require(mu[-1] == 0, f"levels {list(mu)} must end in 0")
    d = _block_pair_count(multiplicities)
    require(len(bs) == d, f"need d = {d} b-values, got {len(bs)}")
    _require_distinct(xs, "x")
    levels = _coerce_all(mu, field)
    total = field.zero
    for blocks in ordered_set_partitions(list(range(len(xs))), list(multiplicities)):
        point = field.zero
        for level, block in zip(levels, blocks):
            for i in block:
                point = point + level * xs[i]
        denominator = field.one
        for position, earlier in enumerate(blocks):
            for later in blocks[position + 1 :]:
                for i in earlier:
                    for j in later:
                        denominator = denominator * (xs[i] - xs[j])
        numerator = _dehomogenized(point, bs, field)
        total = total + field.divide(numerator, denominator, f"fixed point {blocks}")
    return total


def derivative_identity_rhs(
    x: Sequence, weight: Sequence, B: Sequence, k: int, field: Optional[Field] = None
) -> FieldValue:
    """
    sum over pi in S_n of [sum_i (lambda_i x_pi(i))^k] prod_b (sum_i lambda_i x_pi(i) - b) / V(x_pi)

    with V(x_pi) = prod_{i<j} (x_pi(j) - x_pi(i)) and |B| = binom(n,2) - k.
    """
    field = field or RationalField()
    xs, lams, bs = _coerce_all(x, field), _coerce_all(weight, field), _coerce_all(B, field)
    n = len(xs)
    require(len(lams) == n, f"need {n} weight values, got {len(lams)}")
    require(0 <= k <= n - 1, f"need 0 <= k <= n-1, got k={k}")
    require(len(bs) == math.comb(n, 2) - k, f"|B| must be binom({n},2) - {k}")
    _require_distinct(xs, "x")
    total = field.zero
    for pi in itertools.permutations(range(n)):
        permuted = [xs[p] for p in pi]
        power_sum = field.zero
        point = field.zero
        for lam, value in zip(lams, permuted):
            power_sum = power_sum + (lam * value) ** k
            point = point + lam * value
        numerator = power_sum * _dehomogenized(point, bs, field)
        denominator = field.one * vandermonde(permuted)
        total = total + field.divide(numerator, denominator, f"fixed point {pi}")
    return total


def derivative_identity_lhs(
    weight: Sequence, k: int, b_count: int, field: Optional[Field] = None
) -> FieldValue:
    """V(lambda) * binom(n, k+1) * k! * |B|! / V(1, ..., n)."""
    field = field or RationalField()
    lams = _coerce_all(weight, field)
    n = len(lams)
    scale = math.comb(n, k + 1) * math.factorial(k) * math.factorial(b_count)
    numerator = field.one * vandermonde(lams) * scale
    denominator = field.coerce(vandermonde(list(range(1, n + 1))))
    return field.divide(numerator, denominator, f"V(1..{n})")


def _check_symplectic_points(xs: List[FieldValue]) -> None:
    for i, value in enumerate(xs):
        if value == 0:
            raise DegenerateSubstitutionError(value, f"x_{i + 1} = 0")
    for i, j in itertools.combinations(range(len(xs)), 2):
        if xs[i] == xs[j]:
            raise DegenerateSubstitutionError(xs[i] - xs[j], f"x_{i + 1} = x_{j + 1}")
        if xs[i] + xs[j] == 0:
            raise DegenerateSubstitutionError(xs[i] + xs[j], f"x_{i + 1} = -x_{j + 1}")


def symplectic_flag_terms(
    x: Sequence, weight: Sequence, M: Sequence, field: Optional[Field] = None
) -> Iterator[FieldValue]:
    """The 2^k * k! fixed-point terms of the symplectic flag sum, one per (pi, signs)."""
    field = field or RationalField()
    xs, lams, ms = _coerce_all(x, field), _coerce_all(weight, field), _coerce_all(M, field)
    k = len(xs)
    require(len(lams) == k, f"need {k} weight values, got {len(lams)}")
    _check_symplectic_points(xs)
    for pi in itertools.permutations(range(k)):
        for signs in itertools.product((1, -1), repeat=k):
            signed = [xs[p] * s for p, s in zip(pi, signs)]
            point = field.zero
            for lam, value in zip(lams, signed):
                point = point + lam * value
            denominator = field.one
            for i in range(k):
                for j in range(i, k):
                    denominator = denominator * (signed[i] + signed[j])
                    if i < j:
                        denominator = denominator * (signed[i] - signed[j])
            numerator = _dehomogenized(point, ms, field)
            yield field.divide(numerator, denominator, f"fixed point pi={pi} signs={signs}")


def symplectic_flag_rhs(
    x: Sequence, weight: Sequence, M: Sequence, field: Optional[Field] = None
) -> FieldValue:
    field = field or RationalField()
    require(len(M) == len(x) ** 2, f"|M| must be k^2 = {len(x) ** 2}, got {len(M)}")
    total = field.zero
    for term in symplectic_flag_terms(x, weight, M, field):
        total = total + term
    return total


def coefficient_formula(
    f: Callable[[Tuple[FieldValue, ...]], FieldValue],
    C: Sequence[Sequence],
    degrees: Sequence[int],
    field: Optional[Field] = None,
) -> FieldValue:
    """
    Coefficient of prod x_i^{d_i} in f, read off a grid when deg f <= sum d_i.

    sum over c in C_1 x ... x C_n of f(c) / prod_i phi_i'(c_i), with
    phi_i'(c) = prod_{c' in C_i, c' != c} (c - c').
    """
    field = field or RationalField()
    require(len(C) == len(degrees), "need one value set per degree")
    grids = [_coerce_all(values, field) for values in C]
    derivatives = []
    for index, (values, d) in enumerate(zip(grids, degrees)):
        require(len(values) == d + 1, f"|C_{index + 1}| must be d_{index + 1} + 1 = {d + 1}")
        row = []
        for position, c in enumerate(values):
            value = field.one
            for other_position, other in enumerate(values):
                if other_position != position:
                    value = value * (c - other)
            if value == 0:
                raise DegenerateSubstitutionError(value, f"repeated element {c!r} in C_{index + 1}")
            row.append(value)
        derivatives.append(row)
    total = field.zero
    for indices in itertools.product(*(range(len(values)) for values in grids)):
        point = tuple(grids[i][j] for i, j in enumerate(indices))
        weight = field.one
        for i, j in enumerate(indices):
            weight = weight * derivatives[i][j]
        total = total + field.divide(field.one * f(point), weight, f"grid point {point}")
    return total


def signed_nullstellensatz_coefficient(
    n: int, k: int, B: Sequence, field: Optional[Field] = None
) -> FieldValue:
    """
    Coefficient of prod_i x_i^{2n-i} in prod_{i<j} (x_j^2 - x_i^2) * prod_b (x_1 + ... + x_k - b).

    For |B| = 2k(n-k) + binom(k+1,2) this is (-1)^binom(k,2) times the degree of
    the staircase Schubert variety in Gr_k(C^{2n}).
    """
    field = field or RationalField()
    require(1 <= k <= n, f"need 1 <= k <= n, got n={n} k={k}")
    bs = _coerce_all(B, field)
    require(
        len(bs) == symplectic_grassmannian_dim(n, k),
        f"|B| must be {symplectic_grassmannian_dim(n, k)}, got {len(bs)}",
    )
    degrees = [2 * n - i for i in range(1, k + 1)]

    def integrand(point):
        value = field.one * vandermonde([c * c for c in point])
        return value * _dehomogenized(sum(point, field.zero), bs, field)

    return coefficient_formula(integrand, [range(d + 1) for d in degrees], degrees, field)


@dataclass(frozen=True)
class FixedPointSum:
    """A space tag plus the parameters that pin down one fixed-point identity."""

    tag: str
    n: int = 0
    k: int = 0
    r: int = 0
    s: int = 0
    weight: Tuple[int, ...] = ()
    multiplicities: Tuple[int, ...] = ()
    partition: Tuple[int, ...] = ()

    def __post_init__(self):
        require(self.tag in SPACE_TAGS, f"unknown space {self.tag!r}; choose from {SPACE_TAGS}")
        for name in ("weight", "multiplicities", "partition"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.tag == "partial_flag" and not self.weight:
            levels = tuple(range(len(self.multiplicities) - 1, -1, -1))
            object.__setattr__(self, "weight", levels)
        if self.tag in ("full_flag", "symplectic_flag") and not self.k:
            object.__setattr__(self, "k", len(self.weight))
        self.expected()

    def expected(self) -> int:
        """Closed-form left side; validates the parameters as a side effect."""
        if self.tag == "segre":
            return segre_degree(self.r, self.s)
        if self.tag == "grassmann":
            return grassmannian_degree(self.n, self.k)
        if self.tag == "grassmann_schur":
            return schubert_degree(partition_to_indexset(self.partition, self.n, self.k)).degree
        if self.tag == "partial_flag":
            require(len(self.weight) == len(self.multiplicities), "need one level per block")
            expanded = []
            for level, count in zip(self.weight, self.multiplicities):
                expanded += [level] * count
            return partial_flag_degree(expanded).degree
        if self.tag == "full_flag":
            return full_flag_degree_via_vandermonde(self.k, self.weight)
        if self.tag == "symplectic_flag":
            return symplectic_flag_degree(self.k, self.weight).degree
        if self.tag == "staircase":
            sign = -1 if math.comb(self.k, 2) % 2 else 1
            return sign * schubert_degree(staircase_indexset(self.n, self.k)).degree
        require(0 <= self.k <= self.n - 1, f"need 0 <= k <= n-1, got n={self.n} k={self.k}")
        return 0

    def min_modulus(self) -> int:
        """Smallest p for which GF(p) has a non-degenerate substitution."""
        if self.tag == "segre":
            return max(self.r, self.s)
        if self.tag == "partial_flag":
            return sum(self.multiplicities)
        if self.tag == "full_flag":
            return self.k
        if self.tag == "symplectic_flag":
            # x_i must avoid 0 and each other's negatives
            return 2 * self.k + 1
        if self.tag == "staircase":
            return 2 * self.n
        return self.n

    def to_json(self) -> Dict[str, Any]:
        fields = {"tag": self.tag}
        for name in ("n", "k", "r", "s"):
            if getattr(self, name):
                fields[name] = getattr(self, name)
        for name in ("weight", "multiplicities", "partition"):
            if getattr(self, name):
                fields[name] = list(getattr(self, name))
        return fields


class _Sampler:
    """Draws substitution values: distinct integers in [1, 10^6] over QQ, residues over F_p."""

    def __init__(self, rng: random.Random, field: Field):
        self.rng = rng
        self.field = field

    def values(self, count: int) -> List[int]:
        if isinstance(self.field, PrimeField):
            return [self.rng.randrange(self.field.p) for _ in range(count)]
        return [self.rng.randint(*RATIONAL_SAMPLE_RANGE) for _ in range(count)]

    def distinct(self, count: int) -> List[int]:
        if isinstance(self.field, PrimeField):
            return self.rng.sample(range(self.field.p), count)
        low, high = RATIONAL_SAMPLE_RANGE
        return self.rng.sample(range(low, high + 1), count)


def _evaluate_once(space: FixedPointSum, sampler: _Sampler, field: Field):
    """One random substitution: (substitution, value, expected value)."""
    expected = field.coerce(space.expected())
    if space.tag == "segre":
        x, y = sampler.distinct(space.r), sampler.distinct(space.s)
        M = sampler.values(space.r + space.s - 2)
        return {"x": x, "y": y, "M": M}, segre_rhs(x, y, M, field), expected
    if space.tag == "grassmann":
        x, M = sampler.distinct(space.n), sampler.values(space.k * (space.n - space.k))
        return {"x": x, "M": M}, grassmann_rhs(x, space.k, M, field), expected
    if space.tag == "grassmann_schur":
        dim = space.k * (space.n - space.k) - sum(space.partition)
        x, M = sampler.distinct(space.n), sampler.values(dim)
        value = grassmann_schur_rhs(x, space.k, space.partition, M, field)
        return {"x": x, "M": M}, value, expected
    if space.tag in ("partial_flag", "full_flag"):
        if space.tag == "full_flag":
            levels, counts = space.weight, (1,) * space.k
        else:
            levels, counts = space.weight, space.multiplicities
        d = _block_pair_count(counts)
        x, b = sampler.distinct(sum(counts)), sampler.values(d)
        return {"x": x, "b": b}, flag_rhs(x, levels, counts, b, field), expected
    if space.tag == "symplectic_flag":
        x, M = sampler.distinct(space.k), sampler.values(space.k**2)
        return {"x": x, "M": M}, symplectic_flag_rhs(x, space.weight, M, field), expected
    if space.tag == "staircase":
        B = sampler.values(symplectic_grassmannian_dim(space.n, space.k))
        return {"B": B}, signed_nullstellensatz_coefficient(space.n, space.k, B, field), expected
    x, weight = sampler.distinct(space.n), sampler.distinct(space.n)
    B = sampler.values(math.comb(space.n, 2) - space.k)
    value = derivative_identity_rhs(x, weight, B, space.k, field)
    lhs = derivative_identity_lhs(weight, space.k, len(B), field)
    return {"x": x, "lambda": weight, "B": B}, value, lhs


@dataclass
class IdentityReport:
    space: FixedPointSum
    field_name: str
    seed: int
    expected: Optional[int]
    trials: int = 0
    draws: int = 0
    agreements: int = 0
    degenerate: int = 0
    mismatches: int = 0
    first_mismatch: Optional[Dict[str, Any]] = None
    first_degenerate: Optional[str] = None
    values: List[Any] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and self.agreements == self.trials

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space.to_json(),
            "field": self.field_name,
            "seed": self.seed,
            "expected": self.expected,
            "trials": self.trials,
            "draws": self.draws,
            "agreements": self.agreements,
            "degenerate": self.degenerate,
            "mismatches": self.mismatches,
            "first_mismatch": self.first_mismatch,
            "first_degenerate": self.first_degenerate,
            "distinct_values": sorted(set(self.values), key=str),
            "passed": self.passed,
        }


def verify_identity(
    space: FixedPointSum,
    trials: int,
    modulus: int = 0,
    seed: int = 0,
    rng: Optional[random.Random] = None,
) -> IdentityReport:
    """
    Evaluate the fixed-point side of ``space`` at ``trials`` non-degenerate substitutions.

    Degenerate draws are counted and redrawn, up to MAX_DRAWS_PER_TRIAL draws
    per requested trial; a run that stops short of ``trials`` evaluations
    does not pass.

    Args:
        space: which identity, with its parameters
        trials: number of non-degenerate substitutions to evaluate
        modulus: 0 for exact rationals, otherwise a prime p
        seed: seeds a private generator when ``rng`` is not given
        rng: shared generator (the cli passes its single seeded generator)

    Returns:
        Counts of agreements, degenerate draws and mismatches; failures are data.

    Raises:
        ContractViolation: non-positive ``trials``, or a prime too small for
            any substitution to be non-degenerate.
    """
    require(trials >= 1, f"trial count must be positive, got {trials}")
    field = field_for(modulus)
    if isinstance(field, PrimeField):
        require(
            field.p >= space.min_modulus(),
            f"{space.tag} is not verifiable over {field.name}: every substitution is "
            f"degenerate below p = {space.min_modulus()}",
        )
    rng = rng or random.Random(seed)
    sampler = _Sampler(rng, field)
    expected = space.expected() if space.tag != "derivative" else None
    report = IdentityReport(space, field.name, seed, expected, trials=trials)
    while report.agreements + report.mismatches < trials:
        if report.draws >= trials * MAX_DRAWS_PER_TRIAL:
            logger.warning(
                f"{space.tag} over {field.name}: gave up after {report.draws} draws with "
                f"{report.agreements + report.mismatches}/{trials} non-degenerate"
            )
            break
        draw = report.draws
        report.draws += 1
        try:
            substitution, value, target = _evaluate_once(space, sampler, field)
        except DegenerateSubstitutionError as e:
            report.degenerate += 1
            report.first_degenerate = report.first_degenerate or e.context
            logger.debug(f"draw {draw}: {e}")
            continue
        if value == target:
            report.agreements += 1
            if space.tag != "derivative":
                report.values.append(field.to_json(value))
            continue
        report.mismatches += 1
        if report.first_mismatch is None:
            report.first_mismatch = {
                "draw": draw,
                "substitution": substitution,
                "value": field.to_json(value),
                "expected": field.to_json(target),
            }
        logger.warning(f"{space.tag} draw {draw}: {value!r} != {target!r}")
    logger.info(
        f"verify_identity {space.tag} over {field.name}: {report.agreements}/{report.trials} "
        f"agree, {report.degenerate} degenerate, {report.mismatches} mismatches"
    )
    return report
