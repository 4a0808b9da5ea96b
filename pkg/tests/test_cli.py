import json
import subprocess
import sys

import pytest

from qhtoeplitz.cli import default_kmax, run


def test_solve_example():
    out = run(["solve", "--p", "1", "--s", "1", "--m", "0", "--json"])
    assert out.exit_code == 0
    assert json.loads(out.payload)["kernel"] == ["r^(-1)"]


def test_commute_example():
    out = run(["commute", "--f", "E(-1)*r^(3)", "--g", "E(1)*(2*r^(-1) - r^(1))", "--kmax", "500"])
    assert out.exit_code == 0
    assert "commutes=true" in out.payload


def test_commute_failure_exit():
    out = run(["commute", "--f", "E(-1)*r^(3)", "--g", "E(1)*r^(-1)", "--kmax", "10", "--json"])
    assert out.exit_code == 1
    assert json.loads(out.payload)["failures"][0]["index"] == "z^1"


def test_check_eq22_example():
    out = run(["check-eq22", "--p", "2", "--s", "1", "--n", "3"])
    assert out.exit_code == 1 and json.loads(out.payload) == [0]
    assert run(["check-eq22", "--p", "3", "--s", "1", "--n", "1"]).exit_code == 0


def test_mellin_convolve_apply():
    assert run(["mellin", "2*r^(-1) - r^(1)"]).payload == "(z + 3)/(z^2 - 1)"
    assert run(["convolve", "r^(-1)", "r^(1)"]).payload == "1/2*r^(-1) - 1/2*r^(1)"
    out = run(["apply", "--symbol", "E(1)*r^(1)", "--basis", "z^0", "--json"])
    assert json.loads(out.payload) == {"input": "z^0", "coeff": "1", "output": "z^1"}


def test_conv_solve():
    assert run(["conv-solve", "--p", "1", "--psi", "r^(3)"]).payload == "2*r^(-1) - r^(1)"
    assert run(["conv-solve", "--p", "2", "--psi", "r^(3)"]).exit_code == 1


def test_matrix_and_validate():
    out = run(["matrix", "--symbol", "E(2)*r^(2)", "--kmax", "2", "--json"])
    data = json.loads(out.payload)
    assert {"from": "z^0", "to": "z^2", "coeff": "1"} in data["entries"]
    assert data["out_of_range"] == ["z^1", "z^2"]
    assert run(["validate", "--symbol", "E(1)*r^(1)", "--kmax", "6"]).exit_code == 0


@pytest.mark.parametrize("argv", [["mellin", "r^(1"], ["solve", "--p", "0", "--s", "1", "--m", "0"],
                                  ["mellin", "r^(-3)"], ["nope"], []])
def test_usage_errors(argv):
    assert run(argv).exit_code == 2


def test_parse_error_reports_position():
    out = run(["apply", "--symbol", "E(1)*r^(1) x", "--basis", "z^0"])
    assert out.exit_code == 2 and "position 11" in out.payload


def test_default_kmax(monkeypatch):
    monkeypatch.delenv("QH_DEFAULT_KMAX", raising=False)
    assert default_kmax() == 64
    monkeypatch.setenv("QH_DEFAULT_KMAX", "3")
    data = json.loads(run(["matrix", "--symbol", "1", "--json"]).payload)
    assert data["kmax"] == 3
    monkeypatch.setenv("QH_DEFAULT_KMAX", "abc")
    assert run(["matrix", "--symbol", "1"]).exit_code == 2


def test_text_and_json_agree():
    text = run(["solve", "--p", "1", "--s", "1", "--m", "1"]).payload
    data = json.loads(run(["solve", "--p", "1", "--s", "1", "--m", "1", "--json"]).payload)
    assert f"kernel: {data['kernel']}" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qhtoeplitz", "check-eq22", "--p", "2", "--s", "1", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout.strip() == "[0]"
