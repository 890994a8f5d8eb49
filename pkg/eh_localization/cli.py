"""
Command-line front end: one subcommand per capability.

Exit codes: 0 every requested check passed, 1 a mismatch or finding,
2 a usage or contract error, 3 a scan stopped at its enumeration budget.
"""

import argparse
import asyncio
import os
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from dotenv import load_dotenv

from eh_localization.core.exact_core import BudgetExceededError, InternalConsistencyError
from eh_localization.core.sumsets import DEFAULT_BUDGET, THEOREM_TAGS
from eh_localization.tools import degree_tools, grasshopper_tools, identity_tools, sumset_tools
from eh_localization.utils.logging_config import setup_logging
from eh_localization.utils.records import dumps_record, make_header, render_records

load_dotenv()

logger = setup_logging("cli")

EXIT_PASS = 0
EXIT_FINDING = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

OUTPUT_FORMATS = ("human", "records")
CONFIG_KEYS = ("command", "seed", "budget", "format", "output", "handler")
IDENTITY_SPACES = (
    "segre",
    "grassmann",
    "grassmann-schur",
    "grassmann-points",
    "partial-flag",
    "full-flag",
    "symplectic-flag",
    "derivative",
    "staircase",
)
SCAN_THEOREMS = tuple(t.replace("_", "-") for t in THEOREM_TAGS) + ("signed-extremal",)
FORBID_FLAG = re.compile(r"^--forbid(\d+)(?:=(.*))?$")


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; the seed and params go into the report header."""

    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    trials: int = 100
    budget: int = DEFAULT_BUDGET
    output_format: str = "human"
    output: Optional[str] = None


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"{name}={raw!r} is not an integer") from e


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Explicit flags win over EH_LOCALIZATION_* environment values, which win over defaults."""
    seed = args.seed if args.seed is not None else _env_int("EH_LOCALIZATION_SEED", 0)
    budget = args.budget
    if budget is None:
        budget = _env_int("EH_LOCALIZATION_BUDGET", DEFAULT_BUDGET)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed {seed} is not a 64-bit unsigned integer")
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    trials = getattr(args, "trials", None)
    if trials is None:
        trials = RunConfig.trials
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    params = {
        key: list(value) if isinstance(value, tuple) else value
        for key, value in sorted(vars(args).items())
        if key not in CONFIG_KEYS and value is not None
    }
    return RunConfig(
        command=args.command,
        params=params,
        seed=seed,
        trials=trials,
        budget=budget,
        output_format=args.format,
        output=args.output,
    )


def int_list(text: str) -> Tuple[int, ...]:
    """'1,2,3' -> (1, 2, 3); the empty string is the empty tuple."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _parent_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="random seed (EH_LOCALIZATION_SEED)")
    parent.add_argument(
        "--budget", type=int, default=None, help="enumeration cap (EH_LOCALIZATION_BUDGET)"
    )
    parent.add_argument("--format", choices=OUTPUT_FORMATS, default="human")
    parent.add_argument("--output", default=None, help="write the report here instead of stdout")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parent = _parent_parser()
    parser = argparse.ArgumentParser(
        prog="eh-localization",
        description="Exact checks of localization degree formulas and restricted sumset bounds.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    degree = commands.add_parser("degree", parents=[parent], help="projective degrees")
    degree.add_argument("space", choices=degree_tools.DEGREE_SPACES)
    degree.add_argument("--n", type=int)
    degree.add_argument("--k", type=int)
    degree.add_argument("--r", type=int)
    degree.add_argument("--s", type=int)
    degree.add_argument("--lambda", dest="weight", type=int_list)
    degree.add_argument("--partition", type=int_list)
    degree.add_argument("--family", choices=("A", "C"))
    degree.add_argument("--cross-check", action="store_true")
    degree.set_defaults(handler=_run_degree)

    identity = commands.add_parser("identity", parents=[parent], help="fixed-point identities")
    identity.add_argument("space", choices=IDENTITY_SPACES)
    identity.add_argument("--n", type=int, default=0)
    identity.add_argument("--k", type=int, default=0)
    identity.add_argument("--r", type=int, default=0)
    identity.add_argument("--s", type=int, default=0)
    identity.add_argument("--lambda", dest="weight", type=int_list)
    identity.add_argument("--multiplicities", type=int_list)
    identity.add_argument("--partition", type=int_list)
    identity.add_argument("--trials", type=int, default=100)
    identity.add_argument("--modulus", type=int, default=0, help="0 for exact rationals")
    identity.set_defaults(handler=_run_identity)

    sumset = commands.add_parser("sumset", parents=[parent], help="one sumset mod p")
    sumset.add_argument("kind", choices=sumset_tools.SUMSET_KINDS)
    sumset.add_argument("--p", type=int, required=True)
    sumset.add_argument("--set", dest="A", type=int_list, required=True)
    sumset.add_argument("--k", type=int)
    sumset.add_argument("--B", type=int_list)
    sumset.add_argument("--coefficients", type=int_list)
    sumset.set_defaults(handler=_run_sumset)

    scan = commands.add_parser("scan", parents=[parent], help="exhaustive theorem scans")
    scan.add_argument("theorem", choices=SCAN_THEOREMS)
    scan.add_argument("--primes", type=int_list)
    scan.add_argument("--max-size", type=int, default=64)
    scan.add_argument("--max-n", type=int, default=64)
    scan.add_argument("--no-normalize", dest="normalize", action="store_false")
    scan.add_argument("--p", type=int)
    scan.add_argument("--n", type=int)
    scan.add_argument("--k", type=int)
    scan.set_defaults(handler=_run_scan)

    hopper = commands.add_parser(
        "grasshopper",
        parents=[parent],
        help="grasshopper budgets and searches",
        epilog="forbidden sets are given as --forbid1 1,2 --forbid2 5 ...",
    )
    hopper.add_argument("mode", choices=grasshopper_tools.GRASSHOPPER_MODES)
    hopper.add_argument("--k", type=int)
    hopper.add_argument("--b", type=int_list)
    hopper.add_argument("--jumps", type=int_list)
    hopper.add_argument("--P", type=int_list)
    hopper.add_argument("--w", type=int_list)
    hopper.add_argument("--v", type=int)
    hopper.add_argument("--trials", type=int, default=100)
    hopper.add_argument("--signed", action="store_true")
    hopper.set_defaults(handler=_run_grasshopper)
    return parser


def _split_forbid_flags(argv: Sequence[str]) -> Tuple[List[str], Dict[int, Tuple[int, ...]]]:
    """Pull --forbidN values out of argv; argparse cannot declare unboundedly many flags."""
    rest: List[str] = []
    forbidden: Dict[int, Tuple[int, ...]] = {}
    items = list(argv)
    index = 0
    while index < len(items):
        match = FORBID_FLAG.match(items[index])
        if not match:
            rest.append(items[index])
            index += 1
            continue
        position = int(match.group(1))
        if position < 1:
            raise argparse.ArgumentTypeError("forbidden sets are numbered from 1")
        if match.group(2) is not None:
            value = match.group(2)
            index += 1
        elif index + 1 < len(items):
            value = items[index + 1]
            index += 2
        else:
            raise argparse.ArgumentTypeError(f"{items[index]} needs a value")
        forbidden[position] = int_list(value)
    return rest, forbidden


def _forbidden_list(forbidden: Dict[int, Tuple[int, ...]], count: int) -> List[Tuple[int, ...]]:
    if forbidden and max(forbidden) > count:
        raise ValueError(f"--forbid{max(forbidden)} exceeds the {count} forbidden sets")
    return [forbidden.get(i, ()) for i in range(1, count + 1)]


async def _run_degree(config: RunConfig) -> Dict[str, Any]:
    p = config.params
    return await degree_tools.compute_degree(
        p["space"],
        n=p.get("n"),
        k=p.get("k"),
        r=p.get("r"),
        s=p.get("s"),
        weight=p.get("weight"),
        partition=p.get("partition"),
        family=p.get("family"),
        cross_check=p.get("cross_check", False),
    )


async def _run_identity(config: RunConfig) -> Dict[str, Any]:
    p = config.params
    if p["space"] == "grassmann-points":
        return await identity_tools.grassmann_point_report(p["n"], p["k"])
    return await identity_tools.check_identity(
        p["space"],
        trials=config.trials,
        modulus=p.get("modulus", 0),
        seed=config.seed,
        n=p.get("n", 0),
        k=p.get("k", 0),
        r=p.get("r", 0),
        s=p.get("s", 0),
        weight=p.get("weight"),
        multiplicities=p.get("multiplicities"),
        partition=p.get("partition"),
    )


async def _run_sumset(config: RunConfig) -> Dict[str, Any]:
    p = config.params
    return await sumset_tools.compute_sumset(
        p["kind"], p["p"], p["A"], k=p.get("k"), B=p.get("B"), coefficients=p.get("coefficients")
    )


async def _run_scan(config: RunConfig) -> Dict[str, Any]:
    p = config.params
    if p["theorem"] == "signed-extremal":
        if p.get("p") is None or p.get("n") is None or p.get("k") is None:
            raise ValueError("signed-extremal needs --p, --n and --k")
        return await sumset_tools.run_extremal_scan(p["p"], p["n"], p["k"], budget=config.budget)
    if not p.get("primes"):
        raise ValueError(f"scan {p['theorem']} needs --primes")
    return await sumset_tools.run_scan(
        p["theorem"],
        list(p["primes"]),
        max_size=p["max_size"],
        max_n=p["max_n"],
        budget=config.budget,
        normalize=p["normalize"],
    )


async def _run_grasshopper(config: RunConfig) -> Dict[str, Any]:
    p = config.params
    forbidden = None
    if p.get("jumps"):
        count = len(p["jumps"]) if p["mode"] == "signed" else len(p["jumps"]) - 1
        forbidden = _forbidden_list(dict(p.get("forbid", {})), count)
    return await grasshopper_tools.grasshopper(
        p["mode"],
        k=p.get("k"),
        b=p.get("b"),
        jumps=p.get("jumps"),
        forbidden=forbidden,
        P=p.get("P"),
        w=p.get("w"),
        v=p.get("v"),
        trials=config.trials,
        seed=config.seed,
        signed=p.get("signed", False),
    )


def _body(report: Dict[str, Any]) -> Iterator[Dict[str, Any]]:
    """Findings stream one per record ahead of the summary."""
    summary = dict(report)
    findings = summary.pop("findings", None) or []
    for finding in findings:
        yield {"kind": "finding", **finding}
    yield {"kind": "summary", **summary}


def _human(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    for key, item in value.items():
        if isinstance(item, dict) and item:
            lines.append(f"{pad}{key}:")
            lines.extend(_human(item, indent + 1))
        elif isinstance(item, list) and item and isinstance(item[0], dict):
            lines.append(f"{pad}{key}: {len(item)} entries")
            for entry in item:
                lines.append(f"{pad}  - {dumps_record(entry)}")
        else:
            rendered = dumps_record(item) if isinstance(item, (list, dict)) else item
            lines.append(f"{pad}{key}: {rendered}")
    return lines


def render(config: RunConfig, report: Dict[str, Any]) -> str:
    if config.output_format == "records":
        header = make_header(config.command, config.params, config.seed)
        return render_records(header, _body(report))
    return "\n".join(_human(report)) + "\n"


def exit_code_for(report: Dict[str, Any]) -> int:
    if report.get("incomplete"):
        return EXIT_BUDGET
    if not report.get("passed", True):
        return EXIT_FINDING
    return EXIT_PASS


def exit_code_for_error(error: BaseException) -> int:
    root = error
    while root.__cause__ is not None:
        root = root.__cause__
    if isinstance(root, BudgetExceededError):
        return EXIT_BUDGET
    if isinstance(root, InternalConsistencyError):
        return EXIT_FINDING
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        rest, forbid = _split_forbid_flags(argv)
        args = parser.parse_args(rest)
        if forbid:
            if args.command != "grasshopper":
                parser.error("--forbidN only applies to the grasshopper subcommand")
            args.forbid = sorted(forbid.items())
        config = load_run_config(args)
    except SystemExit as e:
        return int(e.code or 0)
    except (argparse.ArgumentTypeError, ValueError) as e:
        print(f"eh-localization: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logger.info(f"{config.command} seed={config.seed} budget={config.budget}")
    try:
        report = asyncio.run(args.handler(config))
    except Exception as e:
        code = exit_code_for_error(e)
        logger.error(f"{config.command} failed with exit code {code}: {e!s}")
        print(f"eh-localization: error: {e}", file=sys.stderr)
        return code

    text = render(config, report)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return exit_code_for(report)


if __name__ == "__main__":
    sys.exit(main())
