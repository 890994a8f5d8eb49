"""
Symmetric-function evaluations and the v-variable coefficient calculus.

The v-variables come from substituting lambda_i = v_i + ... + v_{k-1}
(so lambda_k = 0) into a Vandermonde. ``mu_b`` and ``K_b`` read off its
coefficients; ``L_w_poly``, ``R_w_poly`` and ``Q_poly`` are the polynomials
whose supports decide the Bruhat-restricted and signed grasshopper problems.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from sympy import Matrix, Rational, factorint

from eh_localization.core.bruhat import (
    Permutation,
    as_permutation,
    bruhat_leq,
    cover_transpositions,
    inversions,
)
from eh_localization.core.exact_core import (
    DegenerateSubstitutionError,
    Field,
    FieldValue,
    InternalConsistencyError,
    RationalField,
    SparsePoly,
    exact_integer,
    multinomial,
    poly_product,
    require,
)
from eh_localization.core.root_degrees import vandermonde
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("symfun")

BudgetSequence = Tuple[int, ...]


def validate_budget(b: Sequence[int], length: int) -> BudgetSequence:
    b = tuple(b)
    require(len(b) == length, f"budget sequence {list(b)} must have length {length}")
    require(all(entry >= 0 for entry in b), f"budget sequence {list(b)} has a negative entry")
    return b


def budget_sequences(total: int, length: int) -> Iterator[BudgetSequence]:
    """Non-negative sequences of the given length and sum, lexicographically descending."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in budget_sequences(total - first, length - 1):
            yield (first,) + rest


def vandermonde_eval(values: Sequence, field: Field | None = None) -> FieldValue:
    """V(x_1, ..., x_n) = prod_{i<j} (x_j - x_i)."""
    field = field or RationalField()
    points = [field.coerce(v) for v in values]
    return field.one * vandermonde(points)


def _complete_homogeneous_table(top: int, points: List[FieldValue], field: Field) -> List:
    """h_0..h_top of ``points`` with h_m(x_1..x_r) = h_m(x_1..x_{r-1}) + x_r h_{m-1}(x_1..x_r)."""
    table = [field.one] + [field.zero] * top
    for point in points:
        for m in range(1, top + 1):
            table[m] = table[m] + point * table[m - 1]
    return table


def determinant(rows: List[List[FieldValue]], field: Field) -> FieldValue:
    """Gaussian elimination with row pivoting over ``field``."""
    size = len(rows)
    matrix = [list(row) for row in rows]
    result = field.one
    for column in range(size):
        pivot = next((r for r in range(column, size) if matrix[r][column] != 0), None)
        if pivot is None:
            return field.zero
        if pivot != column:
            matrix[column], matrix[pivot] = matrix[pivot], matrix[column]
            result = -result
        lead = matrix[column][column]
        result = result * lead
        for r in range(column + 1, size):
            factor = matrix[r][column] / lead
            if factor != 0:
                for c in range(column, size):
                    matrix[r][c] = matrix[r][c] - factor * matrix[column][c]
    return result


def _pad_partition(partition: Sequence[int], k: int) -> Tuple[int, ...]:
    require(len(partition) <= k, f"partition {list(partition)} has more than {k} parts")
    parts = tuple(partition) + (0,) * (k - len(partition))
    require(all(p >= 0 for p in parts), f"negative part in {list(parts)}")
    require(all(a >= b for a, b in zip(parts, parts[1:])), f"{list(parts)} is not a partition")
    return parts


def schur_eval(
    partition: Sequence[int], values: Sequence, field: Field | None = None
) -> FieldValue:
    """
    s_lambda at ``values`` by the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).

    No division by the Vandermonde happens, so coincident values are fine.
    """
    field = field or RationalField()
    points = [field.coerce(v) for v in values]
    parts = _pad_partition(partition, len(points))
    length = sum(1 for p in parts if p)
    if not length:
        return field.one
    top = parts[0] + length
    h = _complete_homogeneous_table(top, points, field)

    def entry(m: int) -> FieldValue:
        return h[m] if 0 <= m <= top else field.zero

    rows = [[entry(parts[i] - i + j) for j in range(length)] for i in range(length)]
    return determinant(rows, field)


def schur_bialternant(partition: Sequence[int], values: Sequence) -> Fraction:
    """det(alpha_j^{lambda_i + k - i}) / V(alpha) over the rationals, via sympy."""
    points = [Fraction(v) for v in values]
    k = len(points)
    parts = _pad_partition(partition, k)
    denominator = vandermonde(points)
    if denominator == 0:
        raise DegenerateSubstitutionError(denominator, f"repeated value in {values}")
    # descending row powers give prod_{i<j} (x_i - x_j), hence the sign
    matrix = Matrix(
        [[Rational(p.numerator, p.denominator) ** (parts[i] + k - 1 - i) for p in points]
         for i in range(k)]
    )
    alternant = matrix.det()
    sign = -1 if math.comb(k, 2) % 2 else 1
    return Fraction(int(alternant.p), int(alternant.q)) * sign / denominator


def _partial_sum(nvars: int, start: int, stop: int) -> SparsePoly:
    """v_start + ... + v_stop (1-based, inclusive) in ``nvars`` variables."""
    return SparsePoly.linear([1 if start <= t <= stop else 0 for t in range(1, nvars + 1)])


def vandermonde_poly(n: int) -> SparsePoly:
    """V(lambda_1, ..., lambda_n) = prod_{i<j} (lambda_j - lambda_i) in n variables."""
    require(n >= 1, f"need n >= 1, got {n}")
    xs = [SparsePoly.variable(n, i) for i in range(n)]
    return poly_product(n, (xs[j] - xs[i] for i in range(n) for j in range(i + 1, n)))


@lru_cache(maxsize=None)
def vandermonde_in_v(k: int) -> SparsePoly:
    """V(lambda) with lambda_i = v_i + ... + v_{k-1}, lambda_k = 0, in v_1..v_{k-1}."""
    require(k >= 2, f"need k >= 2, got {k}")
    nvars = k - 1
    # lambda_j - lambda_i = -(v_i + ... + v_{j-1}) for i < j
    factors = (
        -_partial_sum(nvars, i, j - 1) for i in range(1, k + 1) for j in range(i + 1, k + 1)
    )
    return poly_product(nvars, factors)


def vandermonde_derivative_sum(
    weight: Sequence, k: int, field: Field | None = None
) -> FieldValue:
    """sum_i lambda_i^k d^k V / d lambda_i^k at ``weight``; equals V * binom(n, k+1) * k!."""
    field = field or RationalField()
    n = len(weight)
    require(k >= 0, f"need k >= 0, got {k}")
    poly = vandermonde_poly(n)
    points = [field.coerce(v) for v in weight]
    total = field.zero
    for i in range(n):
        total = total + points[i] ** k * poly.derivative(i, k).evaluate(points, field)
    return total


def mu_b(k: int, b: Sequence[int]) -> int:
    """(-1)^binom(k,2) times the coefficient of v^b in ``vandermonde_in_v(k)``."""
    b = validate_budget(b, k - 1)
    sign = -1 if math.comb(k, 2) % 2 else 1
    mu = sign * vandermonde_in_v(k).coefficient(b)
    if mu < 0:
        raise InternalConsistencyError(f"mu{b} = {mu} is negative for k={k}")
    return mu


def K_b(k: int, b: Sequence[int]) -> int:
    """binom(d; 0,1,...,k-1) * mu(b) / binom(d; b) with d = binom(k,2)."""
    b = validate_budget(b, k - 1)
    d = math.comb(k, 2)
    require(sum(b) == d, f"|b| = {sum(b)} must equal binom({k},2) = {d}")
    value = Fraction(multinomial(d, list(range(k))) * mu_b(k, b), multinomial(d, b))
    return exact_integer(value, f"K_b for k={k} b={b}")


def kb_factorization(k: int) -> List[Dict]:
    """Every nonzero K_b at this k with its prime factorization."""
    rows = []
    for b in budget_sequences(math.comb(k, 2), k - 1):
        value = K_b(k, b)
        if value:
            factors = {int(prime): int(power) for prime, power in factorint(value).items()}
            rows.append({"b": list(b), "K_b": value, "factors": factors})
    logger.debug(f"kb_factorization k={k}: {len(rows)} nonzero coefficients")
    return rows


def L_w_poly(w) -> SparsePoly:
    """prod over inversions (i, j) of v_i + ... + v_{j-1}."""
    w = as_permutation(w)
    nvars = w.size - 1
    return poly_product(nvars, (_partial_sum(nvars, i, j - 1) for i, j in sorted(inversions(w))))


def R_w_poly(w) -> SparsePoly:
    """
    Sum over maximal Bruhat chains id < ... < w of the product of cover labels.

    A cover swapping positions i < j carries the label v_i + ... + v_{j-1}.
    """
    w = as_permutation(w)
    nvars = w.size - 1
    memo: Dict = {}

    def chains_from(u) -> SparsePoly:
        if u == w:
            return SparsePoly.constant(nvars, 1)
        if u in memo:
            return memo[u]
        total = SparsePoly(nvars)
        for i, j, upper in cover_transpositions(u):
            if bruhat_leq(upper, w):
                total = total + _partial_sum(nvars, i, j - 1) * chains_from(upper)
        memo[u] = total
        return total

    return chains_from(Permutation.identity(w.size))


def Q_poly(k: int) -> SparsePoly:
    """prod_{i<=j} (v_i + ... + v_k) * prod_{i<j} (v_i + ... + v_{j-1}) in v_1..v_k."""
    require(k >= 1, f"need k >= 1, got {k}")
    factors = [_partial_sum(k, i, k) for i in range(1, k + 1) for _ in range(i, k + 1)]
    factors += [_partial_sum(k, i, j - 1) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    return poly_product(k, factors)
