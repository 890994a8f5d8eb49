"""
Randomized verification of the fixed-point summation identities.
"""

from typing import Any, Dict, Optional, Sequence

from eh_localization.core.localization import (
    SPACE_TAGS,
    FixedPointSum,
    grassmann_point_terms,
    verify_identity,
)
from eh_localization.core.root_degrees import grassmannian_degree
from eh_localization.utils.logging_config import setup_logging

logger = setup_logging("identity_tools")


def space_tag(name: str) -> str:
    """Accept both ``symplectic-flag`` and ``symplectic_flag``."""
    tag = name.replace("-", "_")
    if tag not in SPACE_TAGS:
        choices = ", ".join(t.replace("_", "-") for t in SPACE_TAGS)
        raise ValueError(f"unknown space {name!r}; choose from {choices}")
    return tag


async def check_identity(
    space: str,
    trials: int = 100,
    modulus: int = 0,
    seed: int = 0,
    n: int = 0,
    k: int = 0,
    r: int = 0,
    s: int = 0,
    weight: Optional[Sequence[int]] = None,
    multiplicities: Optional[Sequence[int]] = None,
    partition: Optional[Sequence[int]] = None,
) -> Dict[str, Any]:
    """
    Evaluate a fixed-point sum at random substitutions and compare with its closed form.

    Args:
        space: segre, grassmann, grassmann-schur, partial-flag, full-flag,
            symplectic-flag, derivative or staircase
        trials: number of non-degenerate substitutions to evaluate
        modulus: 0 for exact rationals, a prime for residues mod p
        seed: random seed
        n: ambient dimension (grassmann, grassmann-schur, derivative, staircase)
        k: subspace dimension, derivative order or staircase size
        r: Segre factor size
        s: Segre factor size
        weight: weight for the flag identities (levels for partial-flag)
        multiplicities: block sizes for partial-flag
        partition: Schur restriction for grassmann-schur

    Returns:
        Dictionary with trial, agreement, degenerate and mismatch counts

    Raises:
        Exception: If the parameters do not describe a valid identity
    """
    try:
        fixed_point_sum = FixedPointSum(
            space_tag(space),
            n=n,
            k=k,
            r=r,
            s=s,
            weight=tuple(weight or ()),
            multiplicities=tuple(multiplicities or ()),
            partition=tuple(partition or ()),
        )
        logger.debug(f"identity {fixed_point_sum.to_json()} trials={trials} modulus={modulus}")
        return verify_identity(fixed_point_sum, trials, modulus=modulus, seed=seed).to_dict()
    except Exception as e:
        error_msg = f"Error verifying identity {space}: {e!s}"
        logger.error(error_msg)
        raise Exception(error_msg) from e


async def grassmann_point_report(n: int, k: int) -> Dict[str, Any]:
    """
    The Grassmannian sum at x_i = i with the special dehomogenizing constants.

    Every term but J = {1..k} vanishes and the surviving one is the degree.
    """
    try:
        terms = grassmann_point_terms(n, k)
        nonzero = [term for term in terms if term["term"] != 0]
        degree = grassmannian_degree(n, k)
        passed = len(nonzero) == 1 and nonzero[0]["term"] == degree
        return {
            "n": n,
            "k": k,
            "terms": len(terms),
            "nonzero_terms": nonzero,
            "degree": degree,
            "passed": passed,
        }
    except Exception as e:
        error_msg = f"Error evaluating Grassmannian point terms: {e!s}"
        logger.error(error_msg)
        raise Exception(error_msg) from e
