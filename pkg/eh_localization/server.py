"""
MCP server exposing the degree, identity, sumset and grasshopper reports.
"""

import inspect
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from mcp.server.fastmcp import FastMCP

from eh_localization.core.sumsets import DEFAULT_BUDGET
from eh_localization.prompts.prompts import explain_finding as explain_finding_prompt
from eh_localization.prompts.prompts import verify_theorem_session as session_prompt
from eh_localization.tools import degree_tools, grasshopper_tools, identity_tools, sumset_tools
from eh_localization.utils.logging_config import setup_logging

# Load environment variables from .env file
load_dotenv()

# Initialize logging for the server
logger = setup_logging("mcp_server")

# Initialize FastMCP server
mcp = FastMCP("eh-localization")


@mcp.prompt()
def verify_theorem_session(theorem: str, seed: Optional[int] = None) -> str:
    """Walk through the tool calls that verify one family of statements."""
    return session_prompt(theorem, seed)


@mcp.prompt()
def explain_finding(tag: str) -> str:
    """Explain a finding status or tag taken from a report."""
    return explain_finding_prompt(tag)


def mcp_tool_wrapper(func):
    """Decorator to handle errors from tool functions."""
    sig = inspect.signature(func)

    # Create a wrapper function with the same signature as the original function
    async def wrapper(*args, **kwargs):
        try:
            logger.info(f"tool {func.__name__} called")
            return await func(*args, **kwargs)
        except Exception as e:
            logger.error(f"Error in {func.__name__}: {e!s}")
            raise Exception(f"Error in {func.__name__}: {e!s}") from e

    wrapper.__signature__ = sig
    wrapper.__doc__ = func.__doc__

    # Register the tool with MCP
    return mcp.tool(name=func.__name__)(wrapper)


@mcp_tool_wrapper
async def degree(
    space: str,
    n: Optional[int] = None,
    k: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    weight: Optional[List[int]] = None,
    partition: Optional[List[int]] = None,
    family: Optional[str] = None,
    cross_check: bool = False,
) -> Dict[str, Any]:
    """
    Dimension and projective degree of a Grassmannian, Segre variety, Schubert
    variety, flag variety or Borel-Hirzebruch minimal orbit.
    """
    return await degree_tools.compute_degree(
        space, n, k, r, s, weight, partition, family, cross_check
    )


@mcp_tool_wrapper
async def identity(
    space: str,
    trials: int = 100,
    modulus: int = 0,
    seed: int = 0,
    n: int = 0,
    k: int = 0,
    r: int = 0,
    s: int = 0,
    weight: Optional[List[int]] = None,
    multiplicities: Optional[List[int]] = None,
    partition: Optional[List[int]] = None,
) -> Dict[str, Any]:
    """
    Check a fixed-point summation identity at random exact substitutions.
    Use space="grassmann-points" for the single surviving term at x_i = i.
    """
    if space == "grassmann-points":
        return await identity_tools.grassmann_point_report(n, k)
    return await identity_tools.check_identity(
        space, trials, modulus, seed, n, k, r, s, weight, multiplicities, partition
    )


@mcp_tool_wrapper
async def sumset(
    kind: str,
    p: int,
    A: List[int],
    k: Optional[int] = None,
    B: Optional[List[int]] = None,
    coefficients: Optional[List[int]] = None,
) -> Dict[str, Any]:
    """
    Compute a plain, restricted, signed or linear sumset mod p with theorem verdicts.
    """
    return await sumset_tools.compute_sumset(kind, p, A, k, B, coefficients)


@mcp_tool_wrapper
async def scan(
    theorem: str,
    primes: Optional[List[int]] = None,
    max_size: int = 64,
    max_n: int = 64,
    budget: int = DEFAULT_BUDGET,
    normalize: bool = True,
    p: Optional[int] = None,
    n: Optional[int] = None,
    k: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Exhaustive theorem scan over F_p; theorem="signed-extremal" takes p, n and k instead.
    """
    if theorem == "signed-extremal":
        return await sumset_tools.run_extremal_scan(p, n, k, budget)
    return await sumset_tools.run_scan(theorem, primes or [], max_size, max_n, budget, normalize)


@mcp_tool_wrapper
async def grasshopper(
    mode: str,
    k: Optional[int] = None,
    b: Optional[List[int]] = None,
    jumps: Optional[List[int]] = None,
    forbidden: Optional[List[List[int]]] = None,
    P: Optional[List[int]] = None,
    w: Optional[List[int]] = None,
    v: Optional[int] = None,
    trials: int = 100,
    seed: int = 0,
    signed: bool = False,
) -> Dict[str, Any]:
    """
    Grasshopper budgets, searches, adversarial instances and Bruhat or signed variants.
    """
    return await grasshopper_tools.grasshopper(
        mode, k, b, jumps, forbidden, P, w, v, trials, seed, signed
    )


def main():
    """Initialize and run the MCP server over stdio."""
    logger.info("Starting eh-localization MCP server with stdio transport")
    mcp.run(transport="stdio")


if __name__ == "__main__":
    main()
