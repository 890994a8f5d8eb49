"""
Degree reports for the minimal orbits: closed forms plus an optional
Borel-Hirzebruch cross-check.
"""

from typing import Any, Dict, Optional, Sequence

from eh_localization.core.root_degrees import (
    RootSystemSpec,
    bh_degree,
    full_flag_degree_via_vandermonde,
    grassmannian_degree,
    partial_flag_degree,
    partition_to_indexset,
    schubert_degree,
    segre_degree,
    symplectic_flag_degree,
)
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("degree_tools")

BH = "borel_hirzebruch"

DEGREE_SPACES = (
    "grassmann",
    "segre",
    "schubert",
    "partial-flag",
    "full-flag",
    "symplectic-flag",
    "bh",
)


def _closed_form(
    space: str,
    n: Optional[int],
    k: Optional[int],
    r: Optional[int],
    s: Optional[int],
    weight: Sequence[int],
    partition: Sequence[int],
    family: Optional[str],
):
    """(d, degree, cross-check method name, cross-check thunk or None) for one space."""
    if space == "grassmann":
        degree = grassmannian_degree(n, k)
        lam = (1,) * k + (0,) * (n - k)
        return k * (n - k), degree, BH, lambda: bh_degree(RootSystemSpec("A", n), lam).degree
    if space == "segre":
        return r + s - 2, segre_degree(r, s), None, None
    if space == "schubert":
        result = schubert_degree(partition_to_indexset(partition, n, k))
        check = None
        if not any(partition):
            check = lambda: grassmannian_degree(n, k)  # noqa: E731
        return result.d, result.degree, "grassmannian", check
    if space == "partial-flag":
        result = partial_flag_degree(weight)
        spec = RootSystemSpec("A", len(weight))
        return result.d, result.degree, BH, lambda: bh_degree(spec, weight).degree
    if space == "full-flag":
        degree = full_flag_degree_via_vandermonde(len(weight), weight)
        result = partial_flag_degree(weight)
        return result.d, degree, "partial_flag", lambda: result.degree
    if space == "symplectic-flag":
        result = symplectic_flag_degree(len(weight), weight)
        spec = RootSystemSpec("C", len(weight))
        return result.d, result.degree, BH, lambda: bh_degree(spec, weight).degree
    # bh
    spec = RootSystemSpec(family, n)
    result = bh_degree(spec, weight)
    check, method = None, None
    if family == "A":
        shifted = tuple(x - weight[-1] for x in weight)
        method = "partial_flag"
        check = lambda: partial_flag_degree(shifted).degree  # noqa: E731
    elif all(a > b for a, b in zip(weight, weight[1:])) and weight[-1] > 0:
        method = "symplectic_flag"
        check = lambda: symplectic_flag_degree(n, weight).degree  # noqa: E731
    return result.d, result.degree, method, check


async def compute_degree(
    space: str,
    n: Optional[int] = None,
    k: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    weight: Optional[Sequence[int]] = None,
    partition: Optional[Sequence[int]] = None,
    family: Optional[str] = None,
    cross_check: bool = False,
) -> Dict[str, Any]:
    """
    Dimension and projective degree of a minimal orbit or Schubert variety.

    Args:
        space: one of DEGREE_SPACES
        n: ambient dimension (grassmann, schubert) or rank (bh)
        k: subspace dimension (grassmann, schubert)
        r: first Segre factor is P^{r-1}
        s: second Segre factor is P^{s-1}
        weight: dominant weight (flags, bh)
        partition: partition in the k x (n-k) box (schubert)
        family: "A" or "C" (bh)
        cross_check: also evaluate an independent formula and compare

    Returns:
        Dictionary with d, degree and, when requested, the cross-check result

    Raises:
        Exception: If the parameters are invalid or a degree is not integral
    """
    try:
        if space not in DEGREE_SPACES:
            raise ValueError(f"unknown space {space!r}; choose from {DEGREE_SPACES}")
        weight = tuple(weight or ())
        partition = tuple(partition or ())
        logger.debug(f"degree {space}: n={n} k={k} r={r} s={s} weight={weight}")
        d, degree, method, check = _closed_form(space, n, k, r, s, weight, partition, family)
        report: Dict[str, Any] = {"space": space, "d": d, "degree": degree, "passed": True}
        params = {"n": n, "k": k, "r": r, "s": s, "family": family}
        report["params"] = {key: value for key, value in params.items() if value is not None}
        if weight:
            report["params"]["weight"] = list(weight)
        if partition:
            report["params"]["partition"] = list(partition)
        if cross_check:
            if check is None:
                report["cross_check"] = None
            else:
                value = check()
                agrees = value == degree
                report["cross_check"] = {"method": method, "degree": value, "agrees": agrees}
                report["passed"] = agrees
                if not report["passed"]:
                    logger.warning(f"degree cross-check disagrees for {space}: {report}")
        return report
    except Exception as e:
        error_msg = f"Error computing degree of {space}: {e!s}"
        logger.error(error_msg)
        raise Exception(error_msg) from e
