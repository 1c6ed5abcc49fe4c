import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from rootchev.cli import main

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "schemas" / "report.json").read_text())


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def run_json(args, capsys):
    code, out = run_cli(list(args) + ["--format", "json"], capsys)
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


def test_order_json(capsys):
    code, payload = run_json(["order", "--type", "A2", "--q", "2"], capsys)
    assert code == 0
    assert payload["results"]["order"] == "168"
    assert payload["results"]["bfs_order"] == "168"
    assert payload["checks"][0]["passed"]


def test_order_large_q_formula_only(capsys):
    code, payload = run_json(["order", "--type", "E8", "--q", "7"], capsys)
    assert code == 0
    assert int(payload["results"]["order"]) % 7 ** 120 == 0
    assert payload["checks"] == []


def test_check_jacobi_exit_zero(capsys):
    code, payload = run_json(["check", "jacobi", "--type", "G2"], capsys)
    assert code == 0 and payload["checks"][0]["passed"]


def test_check_simplicity_b2_q2(capsys):
    code, payload = run_json(["check", "simplicity", "--type", "B2", "--q", "2"], capsys)
    assert code == 0
    assert payload["results"]["simple"] is False
    assert payload["results"]["expected_simple"] is False


def test_check_poincare(capsys):
    code, payload = run_json(["check", "poincare", "--type", "B2", "--q", "3"], capsys)
    assert code == 0 and payload["checks"][0]["passed"]


def test_check_hall_a2(capsys):
    code, payload = run_json(["check", "hall", "--type", "A2"], capsys)
    assert code == 0
    table = payload["results"]["table"]
    assert len(table) == 2 and all(row["matches_cocycle"] for row in table)


def test_bruhat_word(capsys):
    code, payload = run_json(
        ["bruhat", "--type", "A2", "--q", "3", "--word", "E:a1:1,n:a2,E:-a1:2"], capsys)
    assert code == 0
    assert payload["results"]["weyl_word"] == [2, 1]
    assert all(c["passed"] for c in payload["checks"])


def test_commutator_cmd(capsys):
    code, payload = run_json(
        ["commutator", "--type", "G2", "--x", "a1", "--y", "a2"], capsys)
    assert code == 0
    assert [t["i"] for t in payload["results"]["terms"]] == [1, 2, 3, 3]


def test_constants_cmd(capsys):
    code, payload = run_json(["constants", "--type", "A2", "--scheme", "cocycle"], capsys)
    assert code == 0
    rows = payload["results"]["table"]
    assert all(abs(r["gamma"]) == 1 for r in rows)
    assert all([a + b for a, b in zip(r["x_root"], r["y_root"])] == r["l_root"]
               for r in rows)


def test_info_ladder(capsys):
    code, payload = run_json(
        ["info", "--type", "G2", "--x", "a1", "--y", "a2"], capsys)
    assert code == 0
    assert payload["results"]["ladder"]["rank2_type"] == "G2"
    assert payload["results"]["ladder"]["q"] == 3


def test_usage_errors(capsys):
    code, _ = run_cli(["order", "--type", "Z9", "--q", "2"], capsys)
    assert code == 2
    code, _ = run_cli(["commutator", "--type", "A2", "--x", "a1", "--y", "a9"], capsys)
    assert code == 2
    code, _ = run_cli(["bruhat", "--type", "A2", "--q", "3", "--word", "Q:a1:1"], capsys)
    assert code == 2


def test_unknown_flag_rejected():
    proc = subprocess.run([sys.executable, "-m", "rootchev.cli", "order",
                           "--type", "A2", "--q", "2", "--bogus"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_determinism():
    argv = [sys.executable, "-m", "rootchev.cli", "check", "steinberg", "--type", "A2",
            "--field", "F5", "--seed", "7", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, text=True)
    b = subprocess.run(argv, capture_output=True, text=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_text_mode(capsys):
    code, out = run_cli(["order", "--type", "A2", "--q", "2"], capsys)
    assert code == 0
    assert "order: 168" in out and "[PASS]" in out
