#!/usr/bin/env python3
"""Calibrated stability scans: surviving fraction vs shock severity f.

Input: one or two CSVs from `contagion calibrate` (theta, f, a, b, p);
passing two files overlays them (e.g. two reference years), one panel per
interbank share.
"""

import argparse
from pathlib import Path

import matplotlib.pyplot as plt

from figcsv import read_table, save

MARKERS = ["x", "o"]
COLORS = ["tab:blue", "black"]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="scan CSV; repeat to overlay a second scan")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    tables = [(Path(p).stem, read_table(p, "calibration")) for p in args.inputs[:2]]
    thetas = sorted({t for _, tab in tables for t in tab["theta"]})

    if not thetas:
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.set_xlabel("shock severity f")
        ax.set_ylabel("operating fraction p")
        save(fig, args.out)
        return 0

    ncols = min(3, len(thetas))
    nrows = -(-len(thetas) // ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(3.2 * ncols, 2.6 * nrows),
                             sharex=True, sharey=True, squeeze=False)
    for k, theta in enumerate(thetas):
        ax = axes[k // ncols][k % ncols]
        for (label, tab), marker, color in zip(tables, MARKERS, COLORS):
            rows = [(f, p) for t, f, p in zip(tab["theta"], tab["f"], tab["p"])
                    if abs(t - theta) < 1e-12]
            if rows:
                rows.sort()
                ax.plot([r[0] for r in rows], [r[1] for r in rows],
                        marker=marker, ms=3, lw=0.8, color=color, label=label)
        ax.set_title(f"theta = {theta:g}", fontsize=9)
        ax.set_ylim(-0.05, 1.05)
    for ax in axes[-1]:
        ax.set_xlabel("shock severity f")
    for row in axes:
        row[0].set_ylabel("p")
    axes[0][0].legend(fontsize=7)
    for k in range(len(thetas), nrows * ncols):
        axes[k // ncols][k % ncols].axis("off")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
