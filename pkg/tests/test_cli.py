import csv
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from extended_electron import __version__
from extended_electron.cli import main, to_ev

PROBLEMS = Path(__file__).resolve().parents[1] / "demos" / "problems"

DEMOS = {
    "demo-free-electron": ["free_electron.csv"],
    "demo-spin": ["spin_trajectory.csv", "induced_spin.csv"],
    "demo-ab": ["ab_scan.csv"],
    "demo-photon": ["absorption_history.csv", "post_absorption_profile.csv"],
    "demo-hydrogen": ["hydrogen_radial.csv", "hydrogen_decomposition.csv"],
}


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def error_payload(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


@pytest.mark.parametrize("command", sorted(DEMOS))
def test_demos_write_outputs(command, tmp_path):
    assert main([command, "--out", str(tmp_path)]) == 0
    for name in DEMOS[command]:
        header, data = read_csv(tmp_path / name)
        assert len(header) == data.shape[1] and data.shape[0] > 0
        assert np.all(np.isfinite(data))


@pytest.mark.parametrize("command", ["demo-hydrogen", "demo-spin", "demo-ab"])
def test_deterministic_outputs(command, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main([command, "--out", str(a), "--seed", "7"]) == 0
    assert main([command, "--out", str(b), "--seed", "7"]) == 0
    for name in DEMOS[command]:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_seed_changes_random_samples(tmp_path):
    main(["demo-hydrogen", "--out", str(tmp_path / "a"), "--seed", "1"])
    main(["demo-hydrogen", "--out", str(tmp_path / "b"), "--seed", "2"])
    name = "hydrogen_decomposition.csv"
    assert (tmp_path / "a" / name).read_bytes() != (tmp_path / "b" / name).read_bytes()


def test_free_electron_table(tmp_path):
    main(["demo-free-electron", "--out", str(tmp_path), "--v", "2.0", "--rho0", "1.5"])
    header, data = read_csv(tmp_path / "free_electron.csv")
    cols = dict(zip(header, data.T))
    np.testing.assert_allclose(cols["rho"] + cols["S"], 1.5, atol=1e-12)
    np.testing.assert_allclose(cols["E_tot"], 0.5 * 1.5 * 4.0, atol=1e-12)


def test_ab_zeros(tmp_path, capsys):
    assert main(["demo-ab", "--out", str(tmp_path), "--A-max", "3.1416", "--path-length", "1"]) == 0
    assert "1.5708" in capsys.readouterr().out
    _, data = read_csv(tmp_path / "ab_scan.csv")
    A, intensity = data.T
    i = np.argmin(np.abs(A - math.pi / 2))
    assert intensity[i] < 1e-4
    # a wider scan also reaches the second zero at 3 pi / 2
    main(["demo-ab", "--out", str(tmp_path), "--A-max", "5.0", "--points", "501"])
    _, data = read_csv(tmp_path / "ab_scan.csv")
    A, intensity = data.T
    assert intensity[np.argmin(np.abs(A - 3 * math.pi / 2))] < 1e-4


def test_photon_incomplete_is_input_error(tmp_path, capsys):
    code = main(["demo-photon", "--out", str(tmp_path), "--rise", "1e6"])
    assert code == 2
    payload = error_payload(capsys)
    assert payload["exit_code"] == 2 and "incomplete" in payload["message"]


def test_solve_box_passes(tmp_path):
    assert main(["solve-ofdft", str(PROBLEMS / "box.json"), "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "results.json").read_text())
    assert summary["passed"] and summary["mu"] == pytest.approx(math.pi ** 2 / 2, rel=5e-4)
    header, data = read_csv(tmp_path / "fields.csv")
    assert header == ["x", "y", "z", "rho_half", "S_half", "eSx", "eSy", "eSz"]


def test_solve_constant_pi_reports_failure(tmp_path):
    assert main(["solve-ofdft", str(PROBLEMS / "constant_pi.json"), "--out", str(tmp_path)]) == 1
    summary = json.loads((tmp_path / "results.json").read_text())
    assert summary["converged"] is False and len(summary["residual_history"]) == summary["iterations"]


@pytest.mark.parametrize("argv,kind", [
    (["solve-ofdft", "missing.json"], "InputError"),
    (["demo-free-electron", "--v", "-1"], "InputError"),
    (["demo-hydrogen", "--n", "2", "--l", "2"], "InputError"),
    (["demo-ab", "--points", "many"], "UsageError"),
])
def test_input_errors(argv, kind, tmp_path, capsys):
    assert main(argv + ["--out", str(tmp_path)]) == 2
    payload = error_payload(capsys)
    assert payload["error"] == kind and payload["exit_code"] == 2


@pytest.mark.parametrize("argv", [["no-such-command"], []])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert error_payload(capsys)["error"] == "UsageError"


def test_bad_problem_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"grid": {"points": [16]}}')
    assert main(["solve-ofdft", str(bad), "--out", str(tmp_path)]) == 2
    assert "length" in error_payload(capsys)["message"]


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["demo-ab", "--out", str(blocker / "sub")]) == 2
    assert error_payload(capsys)["error"] == "OutputError"


def test_verify(tmp_path, capsys):
    assert main(["verify", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "14/14 checks passed" in out
    report = json.loads((tmp_path / "verify.json").read_text())
    assert len(report) == 14 and all(r["passed"] for r in report)


def test_version_and_module_entry():
    res = subprocess.run([sys.executable, "-m", "extended_electron", "--version"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == __version__


def test_to_ev():
    assert to_ev(1.0) == 27.2114
    assert to_ev(-0.3) == pytest.approx(-8.16342)
