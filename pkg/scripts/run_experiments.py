#!/usr/bin/env python3
"""Drive the CLI through the full experiment set and collect the CSV outputs.

Writes everything under an output directory (default ./results). Pass
--quick for a fast smoke pass with reduced trial counts and coarser grids;
the full pass mirrors the reference settings (500 banks, 100 trials per
sweep point, 10^4 trials for the survival histogram) and takes a few
minutes on a laptop-class machine.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from contagion.cli import main as cli

ROOT = Path(__file__).resolve().parent.parent


def run(outdir: Path, quick: bool) -> None:
    trials = "10" if quick else "100"
    hist_trials = "200" if quick else "10000"
    sweep = "700:1200:11" if quick else "700:1200:26"
    near_jump = "850:950:6" if quick else "850:950:11"
    fgrid = "0.02:1:25" if quick else "0.02:1:99"

    def go(*argv: str) -> None:
        print("contagion", " ".join(argv))
        rc = cli(list(argv))
        if rc != 0:
            raise SystemExit(f"command failed with exit code {rc}")

    outdir.mkdir(parents=True, exist_ok=True)

    # iteration map around the bistable point, for the cobweb figure
    go("meanfield", "--a", "3", "--b", "7",
       "--curve-out", str(outdir / "map_curve.csv"))

    # hysteresis cycles at sub- and super-critical coupling
    go("hysteresis", "--b", "1", "--a-min", "-2", "--a-max", "6",
       "--steps", "161", "--out", str(outdir / "hysteresis_b1.csv"))
    go("hysteresis", "--b", "7", "--a-min", "0", "--a-max", "8",
       "--steps", "161", "--out", str(outdir / "hysteresis_b7.csv"))

    # phase diagrams from both starting states (note --flag=value form:
    # a leading minus in the grid spec would otherwise parse as an option)
    steps = "41" if quick else "161"
    go("phase", f"--a-grid=-2:10:{steps}", f"--b-grid=0:15:{steps}",
       "--p0", "1", "--out", str(outdir / "phase_p0_1.csv"))
    go("phase", f"--a-grid=-2:10:{steps}", f"--b-grid=0:15:{steps}",
       "--p0", "0", "--out", str(outdir / "phase_p0_0.csv"))

    # minimum-leverage curves for several noise scales
    go("leverage", "--sigma-frac", "0.01,0.02,0.03,0.05",
       "--theta-grid", "0.005:1:200", "--out", str(outdir / "leverage.csv"))

    # liability sweeps: ER for each interbank share, both families
    for theta in ("0.0", "0.1", "0.3"):
        go("simulate", "--network", "er", "--theta", theta, "--trials", trials,
           "--sweep-mu-l", sweep, "--seed", "1",
           "--out", str(outdir / f"sweep_er_theta{theta.replace('.', '')}.csv"))
    go("simulate", "--network", "er", "--theta", "0.3", "--dist", "t:2",
       "--trials", trials, "--sweep-mu-l", sweep, "--seed", "1",
       "--out", str(outdir / "sweep_er_t2_theta03.csv"))

    # alternative exposure topologies
    go("simulate", "--network", "ws", "--c", "12", "--beta", "0.1",
       "--theta", "0.3", "--trials", trials, "--sweep-mu-l", sweep,
       "--seed", "1", "--out", str(outdir / "sweep_ws_theta03.csv"))
    go("simulate", "--network", "cp", "--alpha-core", "0.75", "--theta", "0.3",
       "--trials", trials, "--sweep-mu-l", sweep, "--seed", "1",
       "--out", str(outdir / "sweep_cp_theta03.csv"))

    # collateralized lending
    for q in ("0.25", "0.5", "0.75"):
        go("simulate", "--network", "er", "--theta", "0.3", "--q", q,
           "--trials", trials, "--sweep-mu-l", sweep, "--seed", "1",
           "--out", str(outdir / f"sweep_er_q{q.replace('.', '')}.csv"))

    # mean-field error over connection probability (breakdown map)
    go("simulate", "--network", "er", "--theta", "0.3", "--trials", trials,
       "--sweep-mu-l", near_jump,
       "--alpha-list", "0.002,0.005,0.01,0.02,0.05,0.1",
       "--seed", "1", "--out", str(outdir / "mc_error_grid.csv"))

    # survival histograms near the jump
    go("simulate", "--network", "er", "--theta", "0.3", "--mu-l", "890",
       "--trials", hist_trials, "--seed", "1",
       "--out", str(outdir / "histogram_normal.csv"))
    go("simulate", "--network", "er", "--theta", "0.3", "--mu-l", "870",
       "--dist", "t:2", "--trials", hist_trials, "--seed", "1",
       "--out", str(outdir / "histogram_t2.csv"))

    # calibrated stability scans and the fixed-share trajectory
    thetas = "0,0.03,0.07,0.10,0.11,0.13,0.3,0.4,0.5"
    for country, path in (("UK", "uk_balance_sheets.csv"), ("US", "us_balance_sheets.csv")):
        for year in ("2007", "2012"):
            go("calibrate", "--data", str(ROOT / "data" / path),
               "--country", country, "--year", year,
               "--theta-list", thetas, "--f-grid", fgrid,
               "--out", str(outdir / f"scan_{country.lower()}_{year}.csv"))
    go("calibrate", "--data", str(ROOT / "data" / "uk_balance_sheets.csv"),
       "--country", "UK", "--year", "2012", "--theta-list", "0.10",
       "--f-grid", "0.1:0.9:9", "--out", str(outdir / "trajectory_uk2012.csv"))

    print(f"\nall outputs in {outdir}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=ROOT / "results")
    parser.add_argument("--quick", action="store_true",
                        help="reduced trials/grids for a smoke pass")
    args = parser.parse_args(argv)
    run(args.outdir, args.quick)
    return 0


if __name__ == "__main__":
    sys.exit(main())
