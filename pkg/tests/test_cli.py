import json
import math

import pytest

from dephasim import cli
from dephasim.verify import CheckResult


@pytest.fixture
def config_path(tmp_path):
    data = {
        "scheme": {
            "variant": "ii",
            "theta_a": 0.0,
            "phi_a": 0.0,
            "theta_b": math.pi / 4,
            "phi_b": 0.0,
        },
        "bath": {"kind": "ohmic_family", "s": 1.0, "lambda": 1.0},
        "temperature": {"beta_omega0": 0.1},
        "ratio": {"omega0_over_omegac": 0.01},
        "grid": {"t_max_omega_c": 5.0, "n_points": 4, "spacing": "linear"},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    return path


def test_trace_success(config_path, tmp_path, capsys):
    out = tmp_path / "out.csv"
    assert cli.main(["trace", "--config", str(config_path), "--out", str(out)]) == 0
    assert out.exists()
    assert "wrote" in capsys.readouterr().out


def test_trace_validation_error_exits_1(config_path, tmp_path, capsys):
    data = json.loads(config_path.read_text())
    data["temperature"]["beta_omega0"] = 0.0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code = cli.main(["trace", "--config", str(bad), "--out", str(tmp_path / "x.csv")])
    assert code == 1
    assert "beta_omega0" in capsys.readouterr().err


def test_unknown_preset_exits_1(tmp_path, capsys):
    assert cli.main(["figure", "fig9", "--out", str(tmp_path)]) == 1
    assert "fig9" in capsys.readouterr().err


def test_figure_dump_config(tmp_path):
    assert cli.main(["figure", "fig1", "--out", str(tmp_path), "--dump-config"]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "fig1_lambda0.5.json",
        "fig1_lambda1.json",
        "fig1_lambda2.json",
    ]


def test_verify_algebra_passes(tmp_path, capsys):
    report = tmp_path / "report.csv"
    assert cli.main(["verify", "algebra", "--csv", str(report)]) == 0
    out = capsys.readouterr().out
    assert "PASS algebra/completeness" in out
    lines = report.read_text().strip().split("\n")
    assert lines[0] == "suite,name,max_error,tolerance,passed"
    assert all(line.endswith(",1") for line in lines[1:])


def test_verify_failure_exits_3(monkeypatch, capsys):
    failing = [CheckResult("algebra", "synthetic", max_error=1.0, tolerance=1e-12)]
    monkeypatch.setattr(cli, "run_suite", lambda name: failing)
    assert cli.main(["verify", "algebra"]) == 3
    assert "FAIL" in capsys.readouterr().out
