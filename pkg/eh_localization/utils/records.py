"""
Line-delimited JSON report records.

A stream is one header record followed by body records. Keys are sorted and
separators fixed so that two runs with the same seed produce identical bytes.
"""

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple

from eh_localization.core.exact_core import ContractViolation

RECORD_FORMAT = "eh-localization-report"
RECORD_VERSION = 1


def _encode(value: Any) -> Any:
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def dumps_record(record: Dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), default=_encode)


def make_header(command: str, params: Dict[str, Any], seed: int) -> Dict[str, Any]:
    return {
        "record": "header",
        "format": RECORD_FORMAT,
        "version": RECORD_VERSION,
        "command": command,
        "seed": seed,
        "params": params,
    }


def render_records(header: Dict[str, Any], body: Iterable[Dict[str, Any]]) -> str:
    """The header then each body record tagged ``"record": "result"``, one per line."""
    lines = [dumps_record(header)]
    for record in body:
        lines.append(dumps_record({"record": "result", **record}))
    return "\n".join(lines) + "\n"


def parse_records(text: str) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    """
    Split a record stream back into its header and body.

    Raises:
        ContractViolation: empty stream, missing header or an unknown version
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ContractViolation("empty record stream")
    try:
        records = [json.loads(line) for line in lines]
    except json.JSONDecodeError as e:
        raise ContractViolation(f"malformed record: {e}") from e
    header, body = records[0], records[1:]
    if header.get("record") != "header" or header.get("format") != RECORD_FORMAT:
        raise ContractViolation("record stream does not start with a header")
    if header.get("version") != RECORD_VERSION:
        raise ContractViolation(f"unsupported record version {header.get('version')}")
    return header, body
