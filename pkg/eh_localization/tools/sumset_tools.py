"""
Sumset computations and theorem scans over prime fields.
"""

from typing import Any, Dict, List, Optional, Sequence

from eh_localization.core.sumsets import (
    DEFAULT_BUDGET,
    THEOREM_TAGS,
    check_cauchy_davenport,
    check_ddsh,
    check_signed_eh,
    check_signed_smallp,
    check_small_prime_full,
    check_sun,
    exhaustive_scan,
    extremal_scan,
    linear_restricted_sumset,
    restricted_sumset,
    signed_restricted_sumset,
    sumset,
)
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("sumset_tools")

SUMSET_KINDS = ("plain", "restricted", "signed", "linear")


def theorem_tag(name: str) -> str:
    tag = name.replace("-", "_")
    if tag not in THEOREM_TAGS:
        choices = ", ".join(t.replace("_", "-") for t in THEOREM_TAGS)
        raise ValueError(f"unknown theorem {name!r}; choose from {choices}")
    return tag


async def compute_sumset(
    kind: str,
    p: int,
    A: Sequence[int],
    k: Optional[int] = None,
    B: Optional[Sequence[int]] = None,
    coefficients: Optional[Sequence[int]] = None,
) -> Dict[str, Any]:
    """
    One sumset mod p together with the verdicts of the theorems that apply to it.

    Args:
        kind: plain (A + B), restricted (A_k), signed (signed k-sums) or linear
            (sum a_i x_i over distinct x_i)
        p: prime modulus
        A: the set, as integers
        k: number of summands (restricted, signed)
        B: second summand (plain)
        coefficients: the a_i (linear)

    Returns:
        Dictionary with the elements, the size and one verdict per applicable theorem

    Raises:
        Exception: If the inputs are invalid for the chosen kind
    """
    try:
        A = list(A)
        if kind == "plain":
            B = list(B if B is not None else A)
            elements = sumset(A, B, p)
            verdicts = [check_cauchy_davenport(p, A, B)]
        elif kind == "restricted":
            elements = restricted_sumset(A, k, p)
            verdicts = [check_ddsh(p, A, k)]
        elif kind == "signed":
            elements = signed_restricted_sumset(A, k, p)
            verdicts = [check_signed_eh(p, A, k), check_signed_smallp(p, A, k)]
        elif kind == "linear":
            coefficients = list(coefficients or ())
            elements = linear_restricted_sumset(coefficients, A, p)
            verdicts = [check_sun(p, A, coefficients)]
            if len(coefficients) == len(A):
                verdicts.append(check_small_prime_full(p, A, coefficients))
        else:
            raise ValueError(f"unknown sumset kind {kind!r}; choose from {SUMSET_KINDS}")
        report: Dict[str, Any] = {
            "kind": kind,
            "p": p,
            "A": A,
            "size": len(elements),
            "elements": sorted(elements),
            "verdicts": [verdict.to_dict() for verdict in verdicts],
            "passed": all(verdict.status in ("pass", "skip") for verdict in verdicts),
        }
        if kind == "signed":
            report["zero_attained"] = 0 in elements
        logger.debug(f"sumset {kind} p={p} A={A}: size {len(elements)}")
        return report
    except Exception as e:
        error_msg = f"Error computing {kind} sumset: {e!s}"
        logger.error(error_msg)
        raise Exception(error_msg) from e


async def run_scan(
    theorem: str,
    primes: List[int],
    max_size: int = 64,
    max_n: int = 64,
    budget: int = DEFAULT_BUDGET,
    normalize: bool = True,
) -> Dict[str, Any]:
    """
    Exhaustively check one theorem over every instance at the given primes.

    Args:
        theorem: cauchy-davenport, ddsh, sun, small-prime-full, signed-eh or signed-smallp
        primes: the moduli to scan
        max_size: largest |A| enumerated
        max_n: largest k (signed) or n (sun)
        budget: cap on checked instances
        normalize: enumerate one representative per affine class (sun)

    Returns:
        Aggregate verdict counts, the first finding and whether the scan finished

    Raises:
        Exception: If the theorem tag or a modulus is invalid
    """
    try:
        report = exhaustive_scan(
            theorem_tag(theorem), primes, max_size, max_n, budget=budget, normalize=normalize
        )
        result = report.to_dict()
        result["findings"] = [verdict.to_dict() for verdict in report.findings]
        result["passed"] = report.failures == 0 and report.flags == 0
        return result
    except Exception as e:
        error_msg = f"Error scanning {theorem}: {e!s}"
        logger.error(error_msg)
        raise Exception(error_msg) from e


async def run_extremal_scan(
    p: int, n: int, k: int, budget: int = DEFAULT_BUDGET
) -> Dict[str, Any]:
    """
    Minimize the number of signed k-sums over every valid n-subset of F_p.

    Returns:
        Dictionary with the minimum, the conjectured and proven bounds and the
        minimizing sets, each tagged when it is an odd arithmetic progression

    Raises:
        Exception: If p is not prime or n, k are out of range
    """
    try:
        result = extremal_scan(p, n, k, budget=budget)
        minimum = result["minimum"]
        if minimum is not None:
            result["conjecture_holds"] = minimum == result["conjectured_minimum"]
        bound = result["proven_bound"]
        applies = p >= bound
        result["passed"] = minimum is None or not applies or minimum >= bound
        return result
    except Exception as e:
        error_msg = f"Error in extremal scan: {e!s}"
        logger.error(error_msg)
        raise Exception(error_msg) from e
