"""
Restricted sumsets over F_p and brute-force checkers for the additive theorems.

Residue sets are int bitmasks (bit r set iff r is in the set). Adding a
constant c to every element is a cyclic rotation of the mask by c, so k-fold
distinct sums are a small dynamic program over the elements of A.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from sympy import isprime

from eh_localization.core.exact_core import (
    BudgetExceededError,
    ContractViolation,
    require,
)
from eh_localization.core.root_degrees import grassmannian_degree, symplectic_grassmannian_dim
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("sumsets")

DEFAULT_BUDGET = 10_000_000

THEOREM_TAGS = (
    "cauchy_davenport",
    "ddsh",
    "sun",
    "small_prime_full",
    "signed_eh",
    "signed_smallp",
)


def _require_prime(p: int) -> None:
    require(isinstance(p, int) and isprime(p), f"modulus {p} is not prime")


def residues(values: Iterable[int], p: int) -> Tuple[int, ...]:
    """Reduce mod p, rejecting repeated residues; order is preserved."""
    values = tuple(values)
    reduced = tuple(v % p for v in values)
    require(len(set(reduced)) == len(reduced), f"{list(values)} repeats a residue mod {p}")
    return reduced


def to_mask(values: Iterable[int], p: int) -> int:
    mask = 0
    for v in values:
        mask |= 1 << (v % p)
    return mask


def members(mask: int) -> FrozenSet[int]:
    return frozenset(r for r in range(mask.bit_length()) if mask >> r & 1)


def rotate(mask: int, shift: int, p: int) -> int:
    """The residue set {r + shift : r in mask}."""
    shift %= p
    if not shift:
        return mask
    full = (1 << p) - 1
    return ((mask << shift) | (mask >> (p - shift))) & full


def _sumset_mask(mask_a: int, B: Iterable[int], p: int) -> int:
    result = 0
    for b in B:
        result |= rotate(mask_a, b, p)
    return result


def sumset(A: Iterable[int], B: Iterable[int], p: int) -> FrozenSet[int]:
    """A + B = {a + b mod p}."""
    _require_prime(p)
    return members(_sumset_mask(to_mask(A, p), residues(B, p), p))


def _restricted_mask(A: Sequence[int], k: int, p: int, signed: bool = False) -> int:
    layers = [1] + [0] * k
    for index, a in enumerate(A):
        for j in range(min(k, index + 1), 0, -1):
            step = rotate(layers[j - 1], a, p)
            if signed:
                step |= rotate(layers[j - 1], -a, p)
            layers[j] |= step
    return layers[k]


def restricted_sumset(A: Iterable[int], k: int, p: int) -> FrozenSet[int]:
    """Sums of k pairwise-distinct elements of A, as residues mod p."""
    _require_prime(p)
    A = residues(A, p)
    require(0 <= k <= len(A), f"need 0 <= k <= |A| = {len(A)}, got k={k}")
    return members(_restricted_mask(A, k, p))


def check_signed_preconditions(A: Sequence[int], p: int) -> None:
    """0 not in A and a_i + a_j != 0 mod p for i != j."""
    for a in A:
        if a % p == 0:
            raise ContractViolation(f"0 is in A = {list(A)} mod {p}")
    for a, b in itertools.combinations(A, 2):
        if (a + b) % p == 0:
            raise ContractViolation(f"{a} + {b} = 0 mod {p}")


def signed_restricted_sumset(A: Iterable[int], k: int, p: int) -> FrozenSet[int]:
    """{sum_{i in I} +-a_i : |I| = k} as residues mod p."""
    _require_prime(p)
    A = residues(A, p)
    require(0 <= k <= len(A), f"need 0 <= k <= |A| = {len(A)}, got k={k}")
    check_signed_preconditions(A, p)
    return members(_restricted_mask(A, k, p, signed=True))


def _linear_mask(a: Sequence[int], A: Sequence[int], p: int) -> int:
    # state: bitmask of coefficient slots already filled -> reachable residues
    n = len(a)
    states: Dict[int, int] = {0: 1}
    for x in A:
        updated = dict(states)
        for used, mask in states.items():
            for i in range(n):
                if not used >> i & 1:
                    key = used | 1 << i
                    updated[key] = updated.get(key, 0) | rotate(mask, a[i] * x, p)
        states = updated
    return states.get((1 << n) - 1, 0)


def linear_restricted_sumset(a: Sequence[int], A: Iterable[int], p: int) -> FrozenSet[int]:
    """{sum a_i x_i : x_i in A pairwise distinct}."""
    _require_prime(p)
    A = residues(A, p)
    require(all(c % p for c in a), f"coefficients {list(a)} contain 0 mod {p}")
    require(len(a) <= len(A), f"n = {len(a)} exceeds |A| = {len(A)}")
    return members(_linear_mask([c % p for c in a], A, p))


def coefficient_multiplicities(a: Sequence[int], p: Optional[int] = None) -> Tuple[int, ...]:
    """Multiplicities n_1 >= ... >= n_t of the equal values among the coefficients."""
    keys = [c % p for c in a] if p else list(a)
    return tuple(sorted(Counter(keys).values(), reverse=True))


def sun_d(multiplicities: Sequence[int], size: int) -> int:
    """d = n(|A| - n) + sum_{i<j} n_i n_j."""
    n = sum(multiplicities)
    require(n <= size, f"n = {n} exceeds |A| = {size}")
    return n * (size - n) + sum(x * y for x, y in itertools.combinations(multiplicities, 2))


@dataclass
class Verdict:
    """
    One checked instance.

    status is "pass", "fail" (a proven bound was violated), "flag" (a finding
    recorded rather than asserted) or "skip" (the theorem does not apply).
    """

    theorem: str
    p: int
    A: Tuple[int, ...]
    params: Dict[str, Any]
    status: str
    cardinality: Optional[int] = None
    bound: Optional[int] = None
    notes: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem,
            "p": self.p,
            "A": list(self.A),
            "params": self.params,
            "status": self.status,
            "cardinality": self.cardinality,
            "bound": self.bound,
            "notes": self.notes,
        }


def _skip(theorem: str, p: int, A, params: Dict[str, Any], reason: str) -> Verdict:
    return Verdict(theorem, p, tuple(A), params, "skip", notes={"reason": reason})


def _prepare(theorem: str, p: int, A, params: Dict[str, Any]):
    _require_prime(p)
    try:
        return tuple(sorted(residues(A, p))), None
    except ContractViolation as e:
        return None, _skip(theorem, p, A, params, str(e))


def check_cauchy_davenport(p: int, A: Iterable[int], B: Iterable[int]) -> Verdict:
    A, B = tuple(A), tuple(B)
    params = {"B": sorted(b % p for b in B)}
    A, skipped = _prepare("cauchy_davenport", p, A, params)
    if skipped:
        return skipped
    if not A or not B:
        return _skip("cauchy_davenport", p, A, params, "empty summand")
    size = len(sumset(A, B, p))
    bound = min(p, len(A) + len(residues(B, p)) - 1)
    status = "pass" if size >= bound else "fail"
    return Verdict("cauchy_davenport", p, A, params, status, size, bound)


def check_ddsh(p: int, A: Iterable[int], k: int) -> Verdict:
    """|A_k| >= min{k(n-k) + 1, p}."""
    params = {"k": k}
    A, skipped = _prepare("ddsh", p, A, params)
    if skipped:
        return skipped
    n = len(A)
    if not 1 <= k <= n:
        return _skip("ddsh", p, A, params, f"k={k} outside 1..{n}")
    size = len(restricted_sumset(A, k, p))
    bound = min(k * (n - k) + 1, p)
    notes = {}
    if p > k * (n - k):
        notes["degree_unit_mod_p"] = grassmannian_degree(n, k) % p != 0
    status = "pass" if size >= bound else "fail"
    return Verdict("ddsh", p, A, params, status, size, bound, notes)


def check_sun(p: int, A: Iterable[int], a: Sequence[int]) -> Verdict:
    """
    For p > d the linear restricted sumset has at least d + 1 elements.

    Also records the conjectured bound min{p - delta, n(|A| - n)}, where
    delta = 1 exactly when n = 2 and a_1 + a_2 = 0.
    """
    params = {"a": [c % p for c in a]}
    A, skipped = _prepare("sun", p, A, params)
    if skipped:
        return skipped
    n = len(a)
    if any(c % p == 0 for c in a):
        return _skip("sun", p, A, params, "a coefficient is 0 mod p")
    if n > len(A) or n == 0:
        return _skip("sun", p, A, params, f"n={n} outside 1..|A|={len(A)}")
    d = sun_d(coefficient_multiplicities(a, p), len(A))
    size = len(linear_restricted_sumset(a, A, p))
    delta = 1 if n == 2 and (a[0] + a[1]) % p == 0 else 0
    conjectured = min(p - delta, n * (len(A) - n))
    notes = {
        "d": d,
        "conjectured_bound": conjectured,
        "conjecture_holds": size >= conjectured,
        "conjecture_applies": p != n + 1,
    }
    if delta:
        notes["tag"] = "delta"
    if p <= d:
        verdict = _skip("sun", p, A, params, f"p={p} <= d={d}")
        verdict.cardinality = size
        verdict.notes.update(notes)
        return verdict
    status = "pass" if size >= d + 1 else "fail"
    return Verdict("sun", p, A, params, status, size, d + 1, notes)


def check_small_prime_full(p: int, A: Iterable[int], a: Sequence[int]) -> Verdict:
    """For n = |A| > 3, distinct a_i and p <= binom(n,2), every residue is a permutation sum."""
    params = {"a": [c % p for c in a]}
    A, skipped = _prepare("small_prime_full", p, A, params)
    if skipped:
        return skipped
    n = len(A)
    try:
        residues(a, p)
    except ContractViolation as e:
        return _skip("small_prime_full", p, A, params, str(e))
    if len(a) != n:
        return _skip("small_prime_full", p, A, params, "need |a| = |A|")
    if n <= 3 or p > math.comb(n, 2):
        return _skip("small_prime_full", p, A, params, f"need n > 3 and p <= binom({n},2)")
    size = len(members(_linear_mask([c % p for c in a], A, p)))
    notes = {"derivative_order": math.comb(n, 2) - p + 1}
    status = "pass" if size == p else "fail"
    return Verdict("small_prime_full", p, A, params, status, size, p, notes)


def signed_extremal_count(n: int, k: int) -> int:
    """k(2n - k) + delta(k), delta(k) = 0 iff k = 2; the conjectured minimum."""
    return k * (2 * n - k) + (0 if k == 2 else 1)


def _signed_prepare(theorem: str, p: int, A, k: int):
    params = {"k": k}
    A, skipped = _prepare(theorem, p, A, params)
    if skipped:
        return None, None, skipped
    try:
        check_signed_preconditions(A, p)
    except ContractViolation as e:
        return None, None, _skip(theorem, p, A, params, str(e))
    if not 1 <= k <= len(A):
        return None, None, _skip(theorem, p, A, params, f"k={k} outside 1..{len(A)}")
    return A, params, None


def check_signed_eh(p: int, A: Iterable[int], k: int) -> Verdict:
    """For p > d = 2k(n-k) + binom(k+1,2) the signed k-sums number more than d."""
    A, params, skipped = _signed_prepare("signed_eh", p, A, k)
    if skipped:
        return skipped
    n = len(A)
    d = symplectic_grassmannian_dim(n, k)
    size = len(signed_restricted_sumset(A, k, p))
    notes = {"d": d, "conjectured_minimum": signed_extremal_count(n, k)}
    if p <= d:
        verdict = _skip("signed_eh", p, A, params, f"p={p} <= d={d}")
        verdict.cardinality = size
        verdict.notes.update(notes)
        return verdict
    status = "pass" if size >= d + 1 else "fail"
    return Verdict("signed_eh", p, A, params, status, size, d + 1, notes)


def check_signed_smallp(p: int, A: Iterable[int], k: int) -> Verdict:
    """
    For p <= d the signed k-sums should cover F_p when k is even, and all of
    F_p except possibly 0 when k is odd.

    Reported, never asserted: an even-k instance missing a residue becomes a
    "flag" finding. For k = 2 the residue 0 = +-a_i +- a_j is unreachable.
    """
    A, params, skipped = _signed_prepare("signed_smallp", p, A, k)
    if skipped:
        return skipped
    n = len(A)
    d = symplectic_grassmannian_dim(n, k)
    if p > d:
        return _skip("signed_smallp", p, A, params, f"p={p} > d={d}")
    found = signed_restricted_sumset(A, k, p)
    size = len(found)
    notes = {
        "d": d,
        "zero_attained": 0 in found,
        "missing": sorted(set(range(p)) - found),
    }
    if k % 2 == 0:
        status = "pass" if size == p else "flag"
    else:
        nonzero_covered = set(range(1, p)) <= found
        status = "pass" if nonzero_covered else "flag"
        notes["zero_conjecture_holds"] = 0 in found
    return Verdict("signed_smallp", p, A, params, status, size, p, notes)


class Budget:
    """Hard cap on the number of checked instances in one scan."""

    def __init__(self, cap: int = DEFAULT_BUDGET):
        require(cap >= 1, f"budget must be positive, got {cap}")
        self.cap = cap
        self.used = 0

    def charge(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.cap:
            raise BudgetExceededError(f"enumeration budget {self.cap} exhausted")


@dataclass
class ScanReport:
    theorem: str
    params: Dict[str, Any]
    counts: Counter = field(default_factory=Counter)
    skip_reasons: Counter = field(default_factory=Counter)
    findings: List[Verdict] = field(default_factory=list)
    evaluations: int = 0
    incomplete: bool = False

    def add(self, verdict: Verdict) -> None:
        self.evaluations += 1
        self.counts[verdict.status] += 1
        if verdict.status == "skip":
            reason = re.sub(r"-?\d+", "#", verdict.notes.get("reason", ""))
            self.skip_reasons[reason] += 1
        elif verdict.status in ("fail", "flag"):
            self.findings.append(verdict)

    @property
    def failures(self) -> int:
        return self.counts["fail"]

    @property
    def flags(self) -> int:
        return self.counts["flag"]

    def to_dict(self) -> Dict[str, Any]:
        first = self.findings[0].to_dict() if self.findings else None
        return {
            "theorem": self.theorem,
            "params": self.params,
            "evaluations": self.evaluations,
            "pass": self.counts["pass"],
            "fail": self.counts["fail"],
            "flag": self.counts["flag"],
            "skip": self.counts["skip"],
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "first_finding": first,
            "incomplete": self.incomplete,
        }


def _subsets(universe: Sequence[int], sizes: Iterable[int]):
    for size in sizes:
        yield from itertools.combinations(universe, size)


def _scan_instances(theorem: str, p: int, max_size: int, max_n: int, normalize: bool):
    """Deterministic instance stream for one prime."""
    universe = list(range(p))
    sizes = range(1, min(max_size, p) + 1)
    if theorem == "cauchy_davenport":
        for A in _subsets(universe, sizes):
            for B in _subsets(universe, sizes):
                yield check_cauchy_davenport, (p, A, B)
    elif theorem == "ddsh":
        for A in _subsets(universe, sizes):
            for k in range(1, len(A) + 1):
                yield check_ddsh, (p, A, k)
    elif theorem == "sun":
        # translating A, dilating A and scaling a preserve the sumset size
        nonzero = list(range(1, p))
        for A in _subsets(universe, sizes):
            if normalize and not (A[0] == 0 and (len(A) == 1 or A[1] == 1)):
                continue
            for n in range(1, min(max_n, len(A)) + 1):
                for a in itertools.combinations_with_replacement(nonzero, n):
                    if normalize and a[0] != 1:
                        continue
                    yield check_sun, (p, A, a)
    elif theorem == "small_prime_full":
        for n in range(4, min(max_size, p) + 1):
            if p > math.comb(n, 2):
                continue
            for A in itertools.combinations(universe, n):
                for a in itertools.combinations(universe, n):
                    yield check_small_prime_full, (p, A, a)
    elif theorem in ("signed_eh", "signed_smallp"):
        checker = check_signed_eh if theorem == "signed_eh" else check_signed_smallp
        for A in _subsets(list(range(1, p)), sizes):
            for k in range(1, min(max_n, len(A)) + 1):
                yield checker, (p, A, k)
    else:
        raise ContractViolation(f"unknown theorem {theorem!r}; choose from {THEOREM_TAGS}")


def exhaustive_scan(
    theorem: str,
    primes: Sequence[int],
    max_size: int = 64,
    max_n: int = 64,
    budget: int = DEFAULT_BUDGET,
    normalize: bool = True,
) -> ScanReport:
    """
    Run one checker over every instance at each prime, in lexicographic order.

    Args:
        theorem: one of THEOREM_TAGS
        primes: the moduli to scan
        max_size: largest |A| enumerated
        max_n: largest k (signed, ddsh uses all k) or n (sun)
        budget: cap on checked instances; past it the report is marked incomplete
        normalize: for "sun", enumerate one representative per affine class

    Returns:
        Aggregate counts, skip reasons and every fail/flag verdict.
    """
    require(theorem in THEOREM_TAGS, f"unknown theorem {theorem!r}; choose from {THEOREM_TAGS}")
    for p in primes:
        _require_prime(p)
    params = {"primes": list(primes), "max_size": max_size, "max_n": max_n}
    if theorem == "sun":
        params["normalized"] = normalize
    report = ScanReport(theorem, params)
    meter = Budget(budget)
    try:
        for p in primes:
            for checker, args in _scan_instances(theorem, p, max_size, max_n, normalize):
                meter.charge()
                report.add(checker(*args))
    except BudgetExceededError as e:
        report.incomplete = True
        logger.warning(f"scan {theorem} stopped early: {e}")
    logger.info(
        f"scan {theorem}: {report.evaluations} instances, {report.failures} failures, "
        f"{report.flags} flags, incomplete={report.incomplete}"
    )
    return report


def is_odd_progression(A: Sequence[int], p: int) -> bool:
    """True if {+-a} = {+-(2i-1)u : i = 1..n} for some unit u."""
    target = {a % p for a in A} | {-a % p for a in A}
    for u in range(1, p):
        progression = set()
        for i in range(1, len(A) + 1):
            progression |= {(2 * i - 1) * u % p, -(2 * i - 1) * u % p}
        if progression == target:
            return True
    return False


def extremal_scan(p: int, n: int, k: int, budget: int = DEFAULT_BUDGET) -> Dict[str, Any]:
    """Every valid n-subset of F_p minimizing the number of signed k-sums."""
    _require_prime(p)
    require(1 <= k <= n < p, f"need 1 <= k <= n < p, got p={p} n={n} k={k}")
    meter = Budget(budget)
    minimum = None
    minimizers: List[Tuple[int, ...]] = []
    valid = skipped = 0
    incomplete = False
    try:
        for A in itertools.combinations(range(1, p), n):
            meter.charge()
            try:
                check_signed_preconditions(A, p)
            except ContractViolation:
                skipped += 1
                continue
            valid += 1
            size = len(members(_restricted_mask(A, k, p, signed=True)))
            if minimum is None or size < minimum:
                minimum, minimizers = size, [A]
            elif size == minimum:
                minimizers.append(A)
    except BudgetExceededError as e:
        incomplete = True
        logger.warning(f"extremal scan stopped early: {e}")
    rows = [{"A": list(A), "odd_progression": is_odd_progression(A, p)} for A in minimizers]
    logger.info(f"extremal scan p={p} n={n} k={k}: minimum {minimum} over {valid} sets")
    return {
        "p": p,
        "n": n,
        "k": k,
        "valid_sets": valid,
        "skipped_sets": skipped,
        "minimum": minimum,
        "conjectured_minimum": signed_extremal_count(n, k),
        "proven_bound": symplectic_grassmannian_dim(n, k) + 1,
        "minimizers": rows,
        "progression_minimizers": sum(1 for row in rows if row["odd_progression"]),
        "incomplete": incomplete,
    }
