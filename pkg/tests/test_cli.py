import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from stadirac.cli import RunConfig, main, parse_potential
from stadirac.dynamics import read_snapshot
from stadirac.errors import DomainError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_json_report(capsys):
    code, out, err = run(capsys, "verify", "--json")
    assert code == 0 and err == ""
    rep = json.loads(out)
    assert rep["schema"] == 1 and rep["passed"] is True
    names = {c["name"] for c in rep["checks"]}
    assert {"anticommutation", "blade-signs", "rep16-homomorphism", "bilinear-triple-agreement", "cpt-composition"} <= names
    for c in rep["checks"]:
        assert set(c) >= {"name", "error", "tolerance", "passed"}
        assert c["error"] <= c["tolerance"]


def test_verify_fault_injection_names_anticommutation(capsys):
    code, out, err = run(capsys, "verify", "--inject-fault", "1,2")
    assert code == 4
    assert err.count("\n") == 1 and "anticommutation" in err
    assert "FAIL anticommutation" in out


def test_dump_rep(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, _, _ = run(capsys, "dump-rep", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["schema"] == 1 and len(data["blades"]) == 16
    assert {"w4", "w16", "j16"} <= set(data)


def test_evolve_rest_oscillator(tmp_path, capsys):
    out = tmp_path / "run"
    code, stdout, _ = run(capsys, "evolve", "--grid-n", "8", "--dt", "0.01", "--steps", "1000",
                          "--every", "10", "--out", str(out))
    assert code == 0 and stdout.startswith("final max residual:")
    summary = json.loads((out / "summary.json").read_text())
    assert summary["schema"] == 1
    assert summary["max_abs_f_minus_cos"] < 1e-6
    rows = (out / "evolve.csv").read_text().splitlines()
    assert rows[0].split(",")[:4] == ["step", "t", "residual_max", "j0"]
    assert len(rows) == 1 + 101
    state, header = read_snapshot(out / "snapshot_001000.bin")
    assert header["dt"] == 0.01 and state.t == pytest.approx(10.0)


def test_evolve_charged_rest_frequency(capsys):
    code, out, _ = run(capsys, "evolve", "--init", "charged-rest", "--grid-n", "8",
                       "--dt", "0.01", "--steps", "2000", "--json")
    assert code == 0
    assert abs(json.loads(out)["fitted_frequency"] - 1.25) <= 1e-4


def test_evolve_em_wave_conservation(capsys):
    code, out, _ = run(capsys, "evolve", "--init", "em-plane-wave", "--steps", "40", "--json")
    assert code == 0
    s = json.loads(out)
    assert s["current_conservation"] < 1e-6 and s["max_residual"] < 1e-6


def test_bilinears_csv(capsys):
    code, out, _ = run(capsys, "bilinears", "--grid-n", "8", "--steps", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,x,j0,j1,j2,j3,S012,S023,S031"
    assert len(lines) == 1 + 3 * 8
    first = [float(x) for x in lines[1].split(",")]
    assert first[2:] == [1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0]


def test_outputs_are_byte_identical(tmp_path, capsys):
    argv = ["evolve", "--init", "random-seeded", "--grid-n", "32", "--seed", "11", "--steps", "12",
            "--snapshot-every", "4", "--snapshot-format", "csv", "--serial"]
    for name in ("a", "b"):
        assert run(capsys, *argv, "--out", str(tmp_path / name))[0] == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert "evolve.csv" in files and "snapshot_000008.csv" in files
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["evolve", "--dt", "1.0", "--grid-n", "16"], 2),
        (["evolve", "--grid-n", "7"], 2),
        (["evolve", "--dt", "-0.1"], 2),
        (["evolve", "--potential", "bogus:1"], 2),
        (["evolve", "--potential", "constant:nan"], 2),
        (["evolve", "--init", "em-plane-wave", "--omega0", "1"], 2),
        (["evolve", "--init", "charged-rest", "--potential", "plane-wave:1,0,0,0,1,1"], 2),
        (["evolve", "--steps", "200000"], 2),
        (["evolve", "--seed", "-1"], 2),
        (["evolve", "--grid-n", "8", "--omega0", "1e6", "--steps", "200"], 3),
        (["evolve", "--grid-n", "eight"], 2),
        (["frobnicate"], 2),
        (["verify", "--inject-fault", "1,99"], 2),
    ],
)
def test_error_paths_emit_one_line(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:
        got = exc.code
    _, err = capsys.readouterr()
    assert got == code
    assert err.startswith("error: ") and err.count("\n") == 1


def test_numerical_error_names_step(capsys):
    code, _, err = run(capsys, "evolve", "--grid-n", "8", "--omega0", "1e6", "--steps", "200")
    assert code == 3 and "step" in err


def test_config_validates_before_running():
    with pytest.raises(DomainError):
        RunConfig("evolve", dx=0.0).resolved()
    c = RunConfig("evolve", init="charged-rest").resolved()
    assert (c.omega0, c.charge, c.potential) == (1.0, 1.0, "constant:0.25")


def test_parse_potential_forms():
    assert parse_potential("zero").kind == "zero"
    p = parse_potential("constant:0.25")
    assert np.array_equal(p.amplitude, [0.25, 0, 0, 0])
    assert parse_potential("plane-wave:1,0,0,0,1,0.5").kind == "plane-wave"
    with pytest.raises(DomainError):
        parse_potential("constant:1,2")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stadirac", "dump-rep"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == 1


@pytest.mark.parametrize("script", ["convergence_study.py", "spin_constructions.py"])
def test_scripts_run(script):
    root = Path(__file__).resolve().parents[1]
    proc = subprocess.run([sys.executable, str(root / "scripts" / script)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout
