import json
import subprocess
import sys

import pytest

from satmat import is_saturating, parse_matrix
from satmat.cli import main
from satmat.constructions import named_pattern


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(args, capsys):
    code, out, _ = run(args + ["--format", "json"], capsys)
    return code, json.loads(out)


@pytest.fixture
def i2_file(tmp_path, capsys):
    path = tmp_path / "I2.txt"
    assert main(["construct", "identity", "--k", "2", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_sat_golden(i2_file, capsys):
    code, report = run_json(["sat", "--pattern", str(i2_file), "--rows", "3", "--cols", "3"], capsys)
    assert code == 0
    assert report["results"]["value"] == 5
    assert report["results"]["certificate"] == ["001", "001", "111"]
    assert report["results"]["optimal"] is True
    assert set(report) == {"command", "inputs", "results", "checks", "timing", "budget"}
    assert all(c["passed"] for c in report["checks"])


def test_ssat_classify_q(tmp_path, capsys):
    path = tmp_path / "Q.txt"
    path.write_text(".1...\n....1\n..1..\n1....\n...1.\n")
    code, report = run_json(["ssat-classify", "--pattern", str(path)], capsys)
    assert code == 0 and report["results"]["verdict"] == "Constant"


def test_budget_exhaustion_exit_code(capsys):
    code, report = run_json(
        ["sat", "--pattern", "@J4", "--rows", "6", "--cols", "6", "--budget-seconds", "1"], capsys
    )
    assert code == 2
    res = report["results"]
    assert res["optimal"] is False and res["lower_bound"] <= res["value"] == res["upper_bound"]
    assert report["budget"]["exhausted"] is True


@pytest.mark.parametrize(
    "args, fragment",
    [
        (["sat", "--pattern", "/no/such/file", "--rows", "2", "--cols", "2"], "/no/such/file"),
        (["sat", "--pattern", "@I2", "--rows", "2"], "--cols"),
        (["frobnicate"], "frobnicate"),
        (["sat", "--pattern", "@I2", "--rows", "2", "--cols", "2", "--bogus"], "--bogus"),
        (["sat", "--pattern", "@Z9", "--rows", "2", "--cols", "2"], "@Z9"),
        (["sat", "--pattern", "@I2", "--rows", "0", "--cols", "2"], "positive"),
        ([], "subcommand"),
    ],
)
def test_input_errors(args, fragment, capsys):
    code, out, err = run(args, capsys)
    assert code == 1
    assert fragment in err and fragment in out


def test_malformed_matrix_named(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("10\n1\n")
    code, report = run_json(["contains", "--pattern", "@I2", "--matrix", str(bad)], capsys)
    assert code == 1 and str(bad) in report["results"]["error"] and "ragged" in report["results"]["error"]


def test_json_is_deterministic(capsys):
    args = ["ssat", "--pattern", "@I2", "--rows", "4", "--cols", "4", "--format", "json"]
    reports = []
    for _ in range(2):
        main(args)
        body = json.loads(capsys.readouterr().out)
        body.pop("timing")
        reports.append(json.dumps(body, sort_keys=True))
    assert reports[0] == reports[1]


def test_certificates_reparse_and_verify(capsys):
    code, report = run_json(["sat", "--pattern", "@Jp3", "--rows", "4", "--cols", "4"], capsys)
    M = parse_matrix("\n".join(report["results"]["certificate"]))
    assert M.weight == report["results"]["value"] == 12
    assert is_saturating(M, named_pattern("Jp3"))


def test_contains_and_occurrences(tmp_path, capsys):
    host = tmp_path / "M.txt"
    host.write_text("100\n010\n001\n")
    code, report = run_json(["contains", "--pattern", "@I2", "--matrix", str(host)], capsys)
    assert code == 0 and report["results"]["occurrence"] == {"rows": [1, 2], "cols": [1, 2]}
    code, report = run_json(["occurrences", "--pattern", "@I2", "--matrix", str(host)], capsys)
    assert report["results"]["count"] == 3 and not report["results"]["truncated"]


def test_construct_outputs_parseable_matrix(capsys):
    code, out, _ = run(["construct", "Q"], capsys)
    assert code == 0 and parse_matrix(out) == named_pattern("Q")
    code, out, _ = run(["construct", "frame", "--pattern", "@I2", "--rows", "3", "--cols", "3"], capsys)
    assert parse_matrix(out).weight == 5
    code, _, err = run(["construct", "jk"], capsys)
    assert code == 1 and "--k" in err


def test_witness_pipeline(tmp_path, capsys):
    code, report = run_json(["witness-search", "--pattern", "@Q", "--seed", "0"], capsys)
    assert code == 0 and report["results"]["found"]
    W = tmp_path / "W.txt"
    W.write_text("\n".join(report["results"]["certificate"]))
    code, report = run_json(["witness-check", "--pattern", "@Q", "--matrix", str(W)], capsys)
    assert code == 0 and report["results"]["valid"]
    code, report = run_json(["pump", "--pattern", "@Q", "--matrix", str(W), "--t", "3"], capsys)
    assert code == 0 and report["checks"][0]["passed"]
    n = len(report["results"]["matrix"])
    code, report = run_json(["witness-search", "--pattern", "@I2"], capsys)
    assert code == 2 and report["results"]["found"] is False


def test_witness_check_reports_reason(tmp_path, capsys):
    host = tmp_path / "M.txt"
    host.write_text("000\n000\n000\n")
    code, report = run_json(["witness-check", "--pattern", "@I2", "--matrix", str(host)], capsys)
    assert code == 0
    assert report["results"] == {"valid": False, "reason": "not_saturating", "message": report["results"]["message"]}


def test_extend_reduce_round_trip(tmp_path, capsys):
    small = tmp_path / "small.txt"
    code, report = run_json(["sat", "--pattern", "@I2", "--rows", "3", "--cols", "4"], capsys)
    small.write_text("\n".join(report["results"]["certificate"]))
    code, report = run_json(["extend", "--pattern", "@I2", "--matrix", str(small)], capsys)
    assert code == 0 and report["results"]["weight"] == 6 + 4 + 5 - 1
    big = tmp_path / "big.txt"
    big.write_text("\n".join(report["results"]["matrix"]))
    code, report = run_json(["reduce", "--pattern", "@I3", "--matrix", str(big)], capsys)
    assert code == 0 and report["results"]["weight"] == 6
    code, _, err = run(["reduce", "--pattern", "@J3", "--matrix", str(big)], capsys)
    assert code == 1


def test_staircase_and_levels(tmp_path, capsys):
    code, report = run_json(["sat", "--pattern", "@Jp3", "--rows", "4", "--cols", "4"], capsys)
    M = tmp_path / "M.txt"
    M.write_text("\n".join(report["results"]["certificate"]))
    code, report = run_json(["staircase", "--matrix", str(M)], capsys)
    assert code == 0 and report["results"]["length"] == 7 and report["results"]["below_all_zero"]
    code, report = run_json(["levels", "--matrix", str(M), "--k", "3"], capsys)
    assert code == 0 and report["results"]["passed"]
    assert {c["name"] for c in report["checks"]} >= {"i_ones_level", "v_adjacent", "lemma_leftmost_is_one"}
    Z = tmp_path / "Z.txt"
    Z.write_text("000\n000\n")
    code, _, err = run(["staircase", "--matrix", str(Z)], capsys)
    assert code == 1


def test_classify_commands(capsys):
    code, report = run_json(["classify", "--pattern", "@Qpp"], capsys)
    assert code == 0 and report["results"]["verdict"] == "Linear"
    code, report = run_json(["classify", "--pattern", "@Q"], capsys)
    assert code == 0 and report["results"]["witness"]["weight"] < 400
    code, report = run_json(["ssat-classify", "--pattern", "@Qpp"], capsys)
    assert report["results"]["verdict"] == "Linear" and report["results"]["properties"][0] is False


def test_verify_scope(capsys):
    code, report = run_json(["verify", "ik"], capsys)
    assert code == 0 and report["results"]["passed"]
    assert [c["criterion"] for c in report["checks"]] == [1]


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["ssat", "--pattern", "@I2", "--rows", "3", "--cols", "3", "--format", "json", "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text())["results"]["value"] == 4


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "satmat.cli", "sat", "--pattern", "@I2", "--rows", "3", "--cols", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "sat: 5" in proc.stdout
