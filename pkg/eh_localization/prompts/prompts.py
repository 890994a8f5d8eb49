"""
MCP prompt functions for the verification server.
These prompts walk a client through the tools in a reproducible order.
"""

from typing import Optional

THEOREM_PLANS = {
    "degrees": """1. degree("grassmann", n=6, k=3, cross_check=True) -> expect degree 42
2. degree("symplectic-flag", weight=[2, 1], cross_check=True) -> expect 24
3. degree("bh", family="C", n=2, weight=[1, 1]) -> expect d=3, degree=2""",
    "identities": """1. identity("grassmann", n=5, k=2, trials=100) -> every trial equals 5
2. identity("segre", r=1, s=4) -> every trial equals 1
3. identity("symplectic-flag", weight=[2, 1], trials=20) -> every trial equals 24
4. Repeat one of them with modulus=7 to check the residue mode""",
    "ddsh": """1. scan("ddsh", primes=[3, 5, 7, 11, 13]) -> 0 failures
2. sumset("restricted", p=7, A=[0, 1, 2, 3], k=2) to see one instance in detail""",
    "signed": """1. scan("signed-eh", primes=[11, 13], max_n=3) -> 0 failures
2. scan("signed-extremal", p=17, n=3, k=2) -> minimum 8, odd progressions among minimizers
3. sumset("signed", p=7, A=[1, 2, 3], k=2) -> 6 residues, 0 missing, reported as a flag""",
    "grasshopper": """1. grasshopper("check-b", k=3, b=[2, 1]) -> the three characterizations agree
2. grasshopper("search", jumps=[1, 2], forbidden=[[1]]) -> witness [2, 1]
3. grasshopper("adversary", k=3, b=[3, 0], P=[1]) -> no witness
4. grasshopper("random", k=4, b=[1, 4, 1], trials=200) -> nothing defeated""",
    "bruhat": """1. grasshopper("bruhat-table", w=[2, 3, 1]) -> condition and both supports agree
2. grasshopper("bruhat-existence", k=4) -> holds
3. grasshopper("bruhat-sharpness", k=3, trials=50) -> defeats reported, nothing asserted""",
}

FINDING_NOTES = {
    "fail": "a proven lower bound was violated. Treat it as a bug until the instance is "
    "re-checked by hand: recompute the sumset with sumset(...) and the bound from its parameters.",
    "flag": "a recorded finding, not a contradiction. The classic case is the signed "
    "small-prime statement at p=7, A={1,2,3}, k=2, where 0 cannot be a signed 2-sum.",
    "delta": "a Sun instance with n = 2 and a_1 + a_2 = 0 mod p, where the conjectured "
    "bound drops by one.",
    "degenerate": "a random substitution hit a zero denominator. The identity is not "
    "evaluated at that point; the report counts it separately from mismatches.",
    "incomplete": "the scan reached its enumeration budget. Rerun with a larger budget "
    "or a narrower range before drawing conclusions.",
}


def verify_theorem_session(theorem: str, seed: Optional[int] = None) -> str:
    """
    Generate a step-by-step verification session for one family of statements.

    Args:
        theorem: degrees, identities, ddsh, signed, grasshopper or bruhat
        seed: seed to pass to every randomized tool call

    Returns:
        Prompt listing the tool calls to make and the values to expect
    """
    plan = THEOREM_PLANS.get(theorem)
    if plan is None:
        choices = ", ".join(sorted(THEOREM_PLANS))
        return f"Unknown theorem family '{theorem}'. Choose one of: {choices}."
    seed_text = f"Pass seed={seed} to every randomized call." if seed is not None else (
        "Use the default seed so the run can be repeated."
    )

    return f"""Run a verification session for: {theorem}.

{seed_text}

STEPS:
{plan}

REPORTING:
- Quote the exact numbers each tool returns; every computation is exact.
- A report with "passed": false is a finding. Call explain_finding with its status.
- A report with "incomplete": true was cut short by the budget and proves nothing.
"""


def explain_finding(tag: str) -> str:
    """
    Generate an explanation of a finding status or tag from a report.

    Args:
        tag: fail, flag, delta, degenerate or incomplete

    Returns:
        Prompt describing what the tag means and how to follow it up
    """
    note = FINDING_NOTES.get(tag)
    if note is None:
        choices = ", ".join(sorted(FINDING_NOTES))
        return f"Unknown tag '{tag}'. Known tags: {choices}."
    return f"""A report carries the tag "{tag}": {note}

Summarize the instance (prime, set, parameters, cardinality, bound) and say
whether it needs a bug report or only a note in the results."""
