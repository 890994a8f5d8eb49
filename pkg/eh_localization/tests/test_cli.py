"""
Tests for the command-line front end: output, records and exit codes.
"""

import json

import pytest

from eh_localization.cli import (
    EXIT_BUDGET,
    EXIT_FINDING,
    EXIT_PASS,
    EXIT_USAGE,
    exit_code_for_error,
    int_list,
    main,
)
from eh_localization.core.exact_core import (
    BudgetExceededError,
    ContractViolation,
    InternalConsistencyError,
)
from eh_localization.utils.records import RECORD_FORMAT, dumps_record, parse_records


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("EH_LOCALIZATION_SEED", raising=False)
    monkeypatch.delenv("EH_LOCALIZATION_BUDGET", raising=False)


def test_int_list():
    assert int_list("1,2,3") == (1, 2, 3)
    assert int_list(" ") == ()
    assert int_list("-1,4") == (-1, 4)


def test_degree_human_output(capsys):
    code, out = run(capsys, "degree", "grassmann", "--n", "6", "--k", "3")
    assert code == EXIT_PASS
    assert "degree: 42" in out.splitlines()


def test_degree_bh(capsys):
    code, out = run(capsys, "degree", "bh", "--family", "C", "--n", "2", "--lambda", "1,1")
    lines = out.splitlines()
    assert code == EXIT_PASS
    assert "d: 3" in lines
    assert "degree: 2" in lines


def test_degree_usage_errors(capsys):
    code, _ = run(capsys, "degree", "bh", "--family", "C", "--n", "2", "--lambda", "1,x")
    assert code == EXIT_USAGE
    code, _ = run(capsys, "degree", "bh", "--family", "C", "--n", "2", "--lambda", "1,2")
    assert code == EXIT_USAGE
    code, _ = run(capsys, "degree", "projective-plane")
    assert code == EXIT_USAGE


def test_identity_records_are_reproducible(capsys):
    argv = ("identity", "grassmann", "--n", "5", "--k", "2", "--trials", "20")
    argv += ("--format", "records")
    code, first = run(capsys, *argv, "--seed", "5")
    assert code == EXIT_PASS
    _, second = run(capsys, *argv, "--seed", "5")
    assert first == second
    header, body = parse_records(first)
    assert header["format"] == RECORD_FORMAT
    assert header["command"] == "identity"
    assert header["seed"] == 5
    assert header["params"]["n"] == 5
    assert [record["kind"] for record in body] == ["summary"]
    assert body[0]["agreements"] == 20
    assert body[0]["passed"] is True
    assert all(json.loads(line)["record"] for line in first.splitlines())
    assert "\n".join(dumps_record(r) for r in [header, *body]) + "\n" == first


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("EH_LOCALIZATION_SEED", "7")
    code, out = run(
        capsys, "identity", "segre", "--r", "2", "--s", "2", "--trials", "3", "--format", "records"
    )
    assert code == EXIT_PASS
    header, _ = parse_records(out)
    assert header["seed"] == 7


def test_bad_seed(capsys, monkeypatch):
    monkeypatch.setenv("EH_LOCALIZATION_SEED", "seven")
    code, _ = run(capsys, "identity", "segre", "--r", "2", "--s", "2")
    assert code == EXIT_USAGE
    code, _ = run(capsys, "identity", "segre", "--r", "2", "--s", "2", "--seed", str(2**64))
    assert code == EXIT_USAGE


@pytest.mark.parametrize("trials", ["0", "-3"])
def test_non_positive_trials_are_usage_errors(capsys, trials):
    code, _ = run(capsys, "identity", "segre", "--r", "2", "--s", "2", "--trials", trials)
    assert code == EXIT_USAGE


def test_identity_runs_the_requested_trial_count(capsys):
    argv = ("identity", "grassmann", "--n", "4", "--k", "2", "--modulus", "5")
    code, out = run(capsys, *argv, "--trials", "30", "--format", "records")
    assert code == EXIT_PASS
    _, body = parse_records(out)
    assert body[0]["agreements"] == 30
    assert body[0]["draws"] == 30 + body[0]["degenerate"]
    code, _ = run(capsys, "identity", "derivative", "--n", "6", "--k", "1", "--modulus", "5")
    assert code == EXIT_USAGE


def test_signed_sumset_flag_exits_with_finding(capsys):
    code, out = run(capsys, "sumset", "signed", "--p", "7", "--set", "1,2,3", "--k", "2")
    assert code == EXIT_FINDING
    assert "size: 6" in out.splitlines()


def test_scan_exit_codes(capsys):
    code, _ = run(capsys, "scan", "ddsh", "--primes", "3,5,7")
    assert code == EXIT_PASS
    code, out = run(capsys, "scan", "ddsh", "--primes", "3,5,7", "--budget", "10")
    assert code == EXIT_BUDGET
    assert "incomplete: True" in out.splitlines()
    code, _ = run(capsys, "scan", "ddsh")
    assert code == EXIT_USAGE


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("EH_LOCALIZATION_BUDGET", "10")
    code, _ = run(capsys, "scan", "ddsh", "--primes", "7")
    assert code == EXIT_BUDGET


def test_scan_findings_are_streamed(capsys):
    code, out = run(
        capsys, "scan", "signed-smallp", "--primes", "7", "--max-n", "2", "--format", "records"
    )
    assert code == EXIT_FINDING
    _, body = parse_records(out)
    kinds = [record["kind"] for record in body]
    assert kinds[-1] == "summary"
    assert kinds.count("finding") == body[-1]["flag"] >= 1
    assert all(record["status"] == "flag" for record in body if record["kind"] == "finding")


def test_signed_extremal_scan(capsys):
    code, out = run(capsys, "scan", "signed-extremal", "--p", "17", "--n", "3", "--k", "2")
    assert code == EXIT_PASS
    assert "minimum: 8" in out.splitlines()
    code, _ = run(capsys, "scan", "signed-extremal", "--p", "17")
    assert code == EXIT_USAGE


def test_grasshopper_commands(capsys):
    code, out = run(capsys, "grasshopper", "check-b", "--k", "3", "--b", "2,1")
    assert code == EXIT_PASS
    assert "agree: True" in out.splitlines()
    code, out = run(
        capsys, "grasshopper", "search", "--jumps", "1,2", "--forbid1", "1", "--format", "records"
    )
    assert code == EXIT_PASS
    _, body = parse_records(out)
    assert body[0]["witness"] == [2, 1]
    code, out = run(capsys, "grasshopper", "adversary", "--k", "3", "--P", "1", "--b", "3,0")
    assert code == EXIT_PASS
    assert "witness: None" in out.splitlines()


def test_grasshopper_forbid_equals_form(capsys):
    code, out = run(
        capsys, "grasshopper", "search", "--jumps", "1,2,3", "--forbid1=1,2,3",
        "--format", "records",
    )
    assert code == EXIT_PASS
    _, body = parse_records(out)
    assert body[0]["witness"] is None
    assert body[0]["matching_budget"] is False


def test_grasshopper_usage_errors(capsys):
    code, _ = run(capsys, "grasshopper", "signed", "--jumps", "0,1")
    assert code == EXIT_USAGE
    code, _ = run(capsys, "grasshopper", "search", "--jumps", "1,2", "--forbid3", "1")
    assert code == EXIT_USAGE
    code, _ = run(capsys, "degree", "grassmann", "--n", "4", "--k", "2", "--forbid1", "1")
    assert code == EXIT_USAGE


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.jsonl"
    code, out = run(
        capsys, "degree", "segre", "--r", "2", "--s", "3", "--format", "records",
        "--output", str(target),
    )
    assert code == EXIT_PASS
    assert out == ""
    _, body = parse_records(target.read_text(encoding="utf-8"))
    assert body[0]["degree"] == 3


def test_exit_code_for_error_follows_the_cause_chain():
    def wrapped(inner):
        try:
            try:
                raise inner
            except Exception as e:
                raise Exception("Error in tool") from e
        except Exception as outer:
            return outer

    assert exit_code_for_error(wrapped(BudgetExceededError("cap"))) == EXIT_BUDGET
    assert exit_code_for_error(wrapped(InternalConsistencyError("bad"))) == EXIT_FINDING
    assert exit_code_for_error(wrapped(ContractViolation("usage"))) == EXIT_USAGE
