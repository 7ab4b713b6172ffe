"""Command-line interface: exit codes, report shapes, determinism."""

import json
from pathlib import Path

import pytest

from cclab.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def _run(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_measure_disc(capsys):
    code, out, err = _run(
        capsys, ["measure", "--matrix", str(FIXTURES / "had2.sign"), "--which", "disc"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "measure"
    assert doc["value"] == "1/4"
    assert doc["value_float"] == 0.25
    assert doc["version"]
    assert "guards" in doc


def test_measure_missing_file(capsys):
    code, out, err = _run(
        capsys, ["measure", "--matrix", "no/such/file.sign", "--which", "disc"]
    )
    assert code == 2
    assert "no/such/file.sign" in err


def test_measure_malformed_matrix(capsys, tmp_path):
    bad = tmp_path / "bad.sign"
    bad.write_text("sign 2 2\n+-\n+?\n")
    code, out, err = _run(capsys, ["measure", "--matrix", str(bad), "--which", "disc"])
    assert code == 2
    assert err


def test_measure_bp_requires_eps(capsys):
    code, out, err = _run(
        capsys,
        ["measure", "--matrix", str(FIXTURES / "identity4.bool"), "--which", "bp"],
    )
    assert code == 2


def test_measure_bp(capsys):
    code, out, err = _run(
        capsys,
        [
            "measure",
            "--matrix",
            str(FIXTURES / "identity4.bool"),
            "--which",
            "bp",
            "--eps",
            "1/4",
            "--lambda",
            "entry-count",
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 3


def test_measure_csv_format(capsys):
    code, out, err = _run(
        capsys,
        [
            "measure",
            "--matrix",
            str(FIXTURES / "had2.sign"),
            "--which",
            "disc",
            "--format",
            "csv",
        ],
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "key,value"
    values = dict(line.split(",", 1) for line in lines[1:])
    assert values["value"] == "1/4"


def test_compile(capsys):
    code, out, err = _run(
        capsys,
        [
            "compile",
            "--poly",
            "2*z1^2 - z2",
            "--members",
            str(FIXTURES / "member_a.protocol"),
            str(FIXTURES / "member_b.protocol"),
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["gap"][0][1] == 9
    assert doc["guess_count"] <= doc["guess_bound"]
    assert doc["pp_cost"] <= doc["cost_bound"]


def test_compile_bad_polynomial(capsys):
    code, out, err = _run(
        capsys,
        [
            "compile",
            "--poly",
            "z3",
            "--members",
            str(FIXTURES / "member_a.protocol"),
        ],
    )
    assert code == 2
    assert "z3" in err


def test_pipeline(capsys):
    code, out, err = _run(
        capsys,
        [
            "pipeline",
            "--input",
            str(FIXTURES / "or_pipeline.json"),
            "--matrix",
            str(FIXTURES / "or_target.bool"),
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["max_error"] == "0"
    assert doc["members"][0]["verified"]


def test_amplify(capsys):
    code, out, err = _run(
        capsys,
        [
            "amplify",
            "--input",
            str(FIXTURES / "boundary_pipeline.json"),
            "--matrix",
            str(FIXTURES / "boundary_target.bool"),
            "--times",
            "3",
        ],
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["base_error"] == "1/3"
    assert doc["amplified_error"] == "7/27"


def test_amplify_eps_failure_still_reports(capsys):
    code, out, err = _run(
        capsys,
        [
            "amplify",
            "--input",
            str(FIXTURES / "boundary_pipeline.json"),
            "--matrix",
            str(FIXTURES / "boundary_target.bool"),
            "--times",
            "3",
            "--eps",
            "1/5",
        ],
    )
    assert code == 1
    assert "invariant failed: amplified error at most eps" in err
    assert "7/27" in err
    doc = json.loads(out)
    assert doc["meets_eps"] is False


def test_verify(capsys):
    code, out, err = _run(capsys, ["verify", "--suite", "round-trip", "--seed", "5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert doc["case_count"] == 500


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--suite", "no-such-suite"])
    assert excinfo.value.code == 2


def test_same_seed_same_bytes(capsys):
    argv = ["verify", "--suite", "minimax", "--seed", "21"]
    code_a, out_a, _ = _run(capsys, argv)
    code_b, out_b, _ = _run(capsys, argv)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_out_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, err = _run(
        capsys,
        [
            "measure",
            "--matrix",
            str(FIXTURES / "had2.sign"),
            "--which",
            "disc",
            "--out",
            str(path),
        ],
    )
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["value"] == "1/4"
