# tests/test_cli.py

import pytest

from main import build_parser, main, run_job
from src.utils.serialize import loads, read_csv


def test_zhu_power_job():
    state = run_job(["zhu-power", "--algebra", "A1", "--e", "f_theta", "--level", "2", "--k", "3"])
    assert state["exit_code"] == 0
    assert state["stage"] == "reported"
    result = loads(state["output"])
    assert result["coefficients"] == {"3": 1}
    assert result["equal"]


def test_graded_dims_csv(capsys):
    code = main(["graded-dims", "--algebra", "A1", "--level", "1", "--depth", "2", "--simple", "--format", "csv"])
    assert code == 0
    rows = read_csv(capsys.readouterr().out)
    assert [row["weight"] for row in rows] == ["0/1", "1/1", "2/1"]
    assert [row["dim"] for row in rows] == ["1/1", "3/1", "4/1"]


def test_twisted_jacobi_job():
    state = run_job(["verify", "--identity", "twisted-jacobi", "--algebra", "A2", "--mu", "flip", "--depth", "2"])
    assert state["exit_code"] == 0
    assert state["identity_ok"]
    assert loads(state["output"])["compared"] > 0


def test_power_field_job_reports_integrability():
    argv = ["verify", "--identity", "power-field", "--algebra", "A2", "--mu", "flip", "--level", "1", "--depth", "1"]
    integrable = loads(run_job(argv + ["--lambda", "1"])["output"])
    assert integrable["equal"]
    assert integrable["lambda_admissible"]
    assert integrable["vanishes_on_simple"]
    other = run_job(argv + ["--lambda", "0"])
    assert other["exit_code"] == 0
    assert not loads(other["output"])["lambda_admissible"]


def test_negative_critical_level_is_rejected(capsys):
    assert main(["zhu-dims", "--algebra", "A1", "--level", "-2"]) == 1
    assert "error:" in capsys.readouterr().err


def test_unknown_algebra():
    state = run_job(["build-algebra", "--algebra", "Q7"])
    assert state["exit_code"] == 1
    assert state["output"] is None


def test_csv_only_for_graded_dims():
    state = run_job(["classify", "--algebra", "A1", "--format", "csv"])
    assert state["exit_code"] == 1


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "eigen.json"
    assert main(["eigen-decomp", "--algebra", "A2", "--mu", "flip", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    data = loads(target.read_text())
    assert [d for d in data["dims"]] == [3, 5]


def test_output_is_deterministic():
    argv = ["zhu-product", "--algebra", "A1", "--level", "1", "--depth", "2"]
    assert run_job(argv)["output"] == run_job(argv)["output"]


def test_verify_requires_identity():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--algebra", "A1"])
