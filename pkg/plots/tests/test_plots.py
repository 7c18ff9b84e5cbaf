"""The figure scripts consume real CLI outputs and emit images.

Each case drives the installed CLI through a subprocess (the same external
surface a user sees), then runs the matching plot script on its files.
"""

import subprocess
import sys
from pathlib import Path

import pytest

PLOTS = Path(__file__).resolve().parent.parent
ROOT = PLOTS.parent
DATA = ROOT / "data"


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "contagion.cli", *argv],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


def run_plot(script, *argv):
    return subprocess.run([sys.executable, str(PLOTS / script), *argv],
                          capture_output=True, text=True)


def assert_image(proc, path):
    assert proc.returncode == 0, proc.stderr
    assert path.exists() and path.stat().st_size > 1000


@pytest.fixture(scope="module")
def outputs(tmp_path_factory):
    """One small CLI run per figure family, shared across the module."""
    d = tmp_path_factory.mktemp("cli-outputs")
    run_cli("hysteresis", "--b", "7", "--a-min", "0", "--a-max", "8",
            "--steps", "81", "--out", str(d / "hyst.csv"))
    run_cli("phase", "--a-grid", "0:6:13", "--b-grid", "0:10:9",
            "--out", str(d / "phase.csv"))
    run_cli("meanfield", "--a", "3", "--b", "7",
            "--curve-out", str(d / "curve.csv"))
    run_cli("leverage", "--sigma-frac", "0.01,0.03",
            "--theta-grid", "0.01:0.9:15", "--out", str(d / "lev.csv"))
    run_cli("simulate", "--m", "60", "--trials", "20", "--mu-l", "890",
            "--seed", "2", "--out", str(d / "hist.csv"))
    run_cli("simulate", "--m", "60", "--trials", "5", "--sweep-mu-l",
            "860:940:5", "--seed", "2", "--out", str(d / "sweep.csv"))
    run_cli("simulate", "--m", "60", "--trials", "4", "--mu-l", "890",
            "--alpha-list", "0.05,0.1", "--sweep-mu-l", "880:900:3",
            "--seed", "2", "--out", str(d / "err.csv"))
    run_cli("calibrate", "--data", str(DATA / "uk_balance_sheets.csv"),
            "--country", "UK", "--year", "2007",
            "--theta-list", "0,0.07", "--f-grid", "0.1:1:10",
            "--out", str(d / "scan07.csv"))
    run_cli("calibrate", "--data", str(DATA / "uk_balance_sheets.csv"),
            "--country", "UK", "--year", "2012",
            "--theta-list", "0,0.07", "--f-grid", "0.1:1:10",
            "--out", str(d / "scan12.csv"))
    run_cli("calibrate", "--data", str(DATA / "uk_balance_sheets.csv"),
            "--country", "UK", "--year", "2012", "--theta-list", "0.10",
            "--f-grid", "0.1:0.9:9", "--out", str(d / "traj.csv"))
    return d


def test_hysteresis_figure(outputs, tmp_path):
    img = tmp_path / "hyst.png"
    proc = run_plot("hysteresis.py", "--in", str(outputs / "hyst.csv"),
                    "--out", str(img))
    assert_image(proc, img)


def test_phase_figure_with_overlay(outputs, tmp_path):
    img = tmp_path / "phase.png"
    proc = run_plot("phase.py", "--in", str(outputs / "phase.csv"),
                    "--overlay", str(outputs / "traj.csv"),
                    "--overlay-theta", "0.10", "--out", str(img))
    assert_image(proc, img)


def test_histogram_figure(outputs, tmp_path):
    img = tmp_path / "hist.png"
    proc = run_plot("histogram.py", "--in", str(outputs / "hist.csv"),
                    "--out", str(img))
    assert_image(proc, img)


def test_calibration_figure_two_years(outputs, tmp_path):
    img = tmp_path / "scan.png"
    proc = run_plot("calibration_scan.py", "--in", str(outputs / "scan07.csv"),
                    "--in", str(outputs / "scan12.csv"), "--out", str(img))
    assert_image(proc, img)


def test_cobweb_figure(outputs, tmp_path):
    img = tmp_path / "cobweb.png"
    proc = run_plot("cobweb.py", "--in", str(outputs / "curve.csv"),
                    "--solution", str(outputs / "curve.json"), "--out", str(img))
    assert_image(proc, img)


def test_leverage_figure(outputs, tmp_path):
    img = tmp_path / "lev.png"
    proc = run_plot("leverage.py", "--in", str(outputs / "lev.csv"),
                    "--out", str(img))
    assert_image(proc, img)


def test_sweep_figure(outputs, tmp_path):
    img = tmp_path / "sweep.png"
    proc = run_plot("sweep.py", "--in", str(outputs / "sweep.csv"),
                    "--summary", str(outputs / "sweep.json"), "--out", str(img))
    assert_image(proc, img)


def test_mc_error_figure(outputs, tmp_path):
    img = tmp_path / "err.png"
    proc = run_plot("mc_error.py", "--in", str(outputs / "err.csv"),
                    "--summary", str(outputs / "err.json"), "--out", str(img))
    assert_image(proc, img)


def test_schema_mismatch_is_refused_with_column_diff(outputs, tmp_path):
    img = tmp_path / "bad.png"
    proc = run_plot("histogram.py", "--in", str(outputs / "phase.csv"),
                    "--out", str(img))
    assert proc.returncode != 0
    assert "header mismatch" in proc.stderr
    assert "mu_l" in proc.stderr  # names the missing columns
    assert not img.exists()


def test_empty_but_valid_csv_yields_empty_axes(tmp_path):
    csv = tmp_path / "empty.csv"
    csv.write_text("a,p_forward,p_backward\n")
    img = tmp_path / "empty.png"
    proc = run_plot("hysteresis.py", "--in", str(csv), "--out", str(img))
    assert_image(proc, img)
