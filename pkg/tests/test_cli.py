import json

import numpy as np
import pytest

from barrier_rhs.cli import main
from barrier_rhs.config import ConfigError, RunConfig, load_config, parse_pairs, parse_tolerances


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_coeffs_csv_header_and_precision(capsys):
    code, out, _ = run(capsys, "coeffs", "--n-k", "16", "--k-min", "0.5", "--k-max", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# barrier-rhs coeffs | config v0=10.0")
    assert "anchor:" in lines[0]
    header = lines[1].split(",")
    assert header[:3] == ["k", "energy", "re_t"]
    assert len(lines) == 2 + 16
    row = dict(zip(header, map(float, lines[2].split(","))))
    assert row["k"] == 0.5
    assert row["unitarity_defect"] < 1e-12


def test_config_file_and_flag_precedence(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("# barrier\nv0 = 2.0   # height\nenergy = 3+1i\nn_x = 20\n")
    code, out, _ = run(capsys, "eigen", "--config", str(path), "--v0", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["v0"] == 3.0
    assert doc["config"]["energy"] == [3.0, 1.0]
    assert len(doc["columns"]["x"]) == 20


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "g.csv"
    code, out, _ = run(capsys, "green", "--energy", "3+2j", "--n-x", "16", "--out", str(target))
    assert code == 0 and out == ""
    data = np.genfromtxt(target, delimiter=",", names=True, skip_header=1)
    assert np.max(data["symmetry_defect"]) == 0
    assert np.max(data["unified_defect"]) < 1e-10


@pytest.mark.parametrize("argv", [["eigen", "--n-x", "5"], ["coeffs", "--k-min", "-1"], ["eigen", "--energy", "abc"],
                                  ["coeffs", "--config", "/nonexistent.cfg"], ["coeffs", "--a", "2"],
                                  ["verify", "--tol-override", "bogus=1"], ["transform", "--n-k", "100"]])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_numeric_failure_exit_3(capsys):
    code, _, err = run(capsys, "green", "--energy", "5")
    assert code == 3
    assert "OnCut" in err


def test_verify_suite_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "measure", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"config", "checks"}
    assert all(set(c) == {"name", "anchor", "value", "tolerance", "pass"} for c in doc["checks"])
    assert all(c["name"].startswith("rho") for c in doc["checks"])


def test_verify_fault_injection(capsys):
    code, out, err = run(capsys, "verify", "--suite", "coeffs", "--inject-fault", "--format", "json")
    assert code == 1
    failed = [c["name"] for c in json.loads(out)["checks"] if not c["pass"]]
    assert failed == ["unitarity"]
    assert "flux conservation" in err


def test_tolerance_override_can_fail_a_check(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eigen", "--tol-override", "matching=1e-30")
    assert code == 1
    assert "c1_matching" in out and ",false," in out


def test_free_limit_command(capsys):
    code, out, _ = run(capsys, "free-limit", "--v0-sequence", "0.1", "0.001", "--n-k", "2001")
    assert code == 0
    rows = np.genfromtxt(out.splitlines(), delimiter=",", names=True, skip_header=1)
    assert rows["max_t_defect"][1] < rows["max_t_defect"][0]


def test_parsers():
    assert parse_pairs(["a = 1  # c", "", "# only", "family=minus"]) == {"a": 1.0, "family": "minus"}
    with pytest.raises(ConfigError):
        parse_pairs(["nonsense = 1"])
    with pytest.raises(ConfigError):
        parse_pairs(["v0"])
    assert parse_tolerances(["unitarity=1e-9"]) == {"unitarity": 1e-9}
    with pytest.raises(ConfigError):
        parse_tolerances(["unitarity"])
    assert load_config(None, {"v0": 1.0, "n_x": None}) == RunConfig(v0=1.0)
    with pytest.raises(ConfigError):
        RunConfig(family="up")
