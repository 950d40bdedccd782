import json
import subprocess
import sys

import pytest

from anharmonic.cli import run


def test_solve_howf_example(capsys):
    assert run(["solve", "--family", "howf", "--n", "0", "--lambda", "0.25"]) == 0
    out = capsys.readouterr().out
    assert "alpha=0.835913" in out and "E=0.624016" in out


def test_solve_accepts_fraction(capsys):
    assert run(["solve", "--family", "howf", "--n", "0", "--lambda", "1/4"]) == 0
    assert "lambda=1/4" in capsys.readouterr().out


def test_oracle_example(capsys):
    assert run(["oracle", "--lambda", "1", "--levels", "1"]) == 0
    value = float(capsys.readouterr().out.split("=")[1])
    assert value == pytest.approx(0.8038, abs=5e-4)


@pytest.mark.parametrize("argv", [
    ["solve", "--family", "howf", "--n", "0", "--lambda", "1", "--bogus"],
    ["solve", "--family", "gauss", "--n", "0", "--lambda", "1"],
    ["solve", "--family", "howf", "--n", "0", "--lambda", "-1"],
    ["solve", "--family", "howf", "--n", "-1", "--lambda", "1"],
    ["table", "9"],
    ["oracle", "--lambda", "1", "--levels", "13"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 1
    assert capsys.readouterr().err


def test_solver_failure_exit_code(capsys):
    # g^2 = 0 with lambda near zero pushes the HOWF optimum out of its bracket
    assert run(["solve", "--family", "howf", "--n", "0", "--lambda", "1e-9", "--g2", "0"]) == 2
    assert "solver error" in capsys.readouterr().err


def test_io_error_exit_code(tmp_path, capsys):
    blocker = tmp_path / "f"
    blocker.write_text("")
    argv = ["wavefunction", "--family", "howf", "--n", "0", "--lambda", "1", "--out", str(blocker / "x.csv")]
    assert run(argv) == 3


def test_missing_config_file_is_io_error(tmp_path):
    assert run(["selfcheck", "--config", str(tmp_path / "nope.conf")]) == 3


def test_config_file(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# quartic only\ng_squared = 0\n")
    assert run(["solve", "--family", "howf", "--n", "0", "--lambda", "1/4", "--config", str(conf)]) == 0
    assert "E=0.429268" in capsys.readouterr().out


def test_flags_override_config(tmp_path, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("g_squared = 0\n")
    assert run(["solve", "--family", "howf", "--n", "0", "--lambda", "1/4", "--config", str(conf),
                "--g2", "1"]) == 0
    assert "E=0.624016" in capsys.readouterr().out


@pytest.mark.parametrize("text", ["colour = red\n", "levels = many\n", "just words\n"])
def test_bad_config_keys(tmp_path, text):
    conf = tmp_path / "run.conf"
    conf.write_text(text)
    assert run(["selfcheck", "--config", str(conf)]) == 1


def test_wavefunction_stdout(capsys):
    assert run(["wavefunction", "--family", "howf", "--n", "1", "--lambda", "1", "--samples", "16",
                "--quiet"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,psi" and len(lines) == 17


def test_wavefunction_json(tmp_path):
    out = tmp_path / "wf.json"
    assert run(["wavefunction", "--family", "howf", "--n", "0", "--lambda", "1", "--samples", "16",
                "--format", "json", "--out", str(out), "--quiet"]) == 0
    data = json.loads(out.read_text())
    assert len(data) == 16 and set(data[0]) == {"x", "x_full", "psi", "psi_full"}


def test_table_idempotent(tmp_path):
    for d in ("a", "b"):
        assert run(["table", "3", "--out", str(tmp_path / d), "--quiet"]) == 0
    assert (tmp_path / "a" / "table3.csv").read_bytes() == (tmp_path / "b" / "table3.csv").read_bytes()


def test_table_all_file_count(tmp_path):
    out = tmp_path / "all"
    assert run(["table", "all", "--out", str(out), "--quiet"]) == 0
    files = sorted(p.name for p in out.iterdir())
    assert files == ["run.json"] + [f"table{i}.csv" for i in range(1, 9)]
    record = json.loads((out / "run.json").read_text())
    assert {"config", "wall_clock_seconds", "tables", "printed_ppewf_comparison"} <= set(record)
    assert record["config"]["lambda_grid"][1] == "1/10"


def test_selfcheck(capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert run(["selfcheck"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("[PASS]") == 5
    assert "diagnostic" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "anharmonic", "selfcheck", "--nope"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "unrecognized arguments" in proc.stderr
