#!/usr/bin/env python3
"""Phase heatmap: equilibrium fraction over the (a, b) plane.

Input: CSV from `contagion phase` (a, b, p). Optionally overlays a
calibration trajectory (CSV from `contagion calibrate`) filtered to one
interbank share.
"""

import argparse

import matplotlib.pyplot as plt
import numpy as np

from figcsv import fail, read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--overlay", help="calibration scan CSV to draw on top")
    parser.add_argument("--overlay-theta", type=float,
                        help="interbank share selecting the overlay rows")
    args = parser.parse_args(argv)

    table = read_table(args.input, "phase")
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if table["a"]:
        a_vals = np.unique(table["a"])
        b_vals = np.unique(table["b"])
        grid = np.full((b_vals.size, a_vals.size), np.nan)
        ai = {v: i for i, v in enumerate(a_vals)}
        bi = {v: i for i, v in enumerate(b_vals)}
        for a, b, p in zip(table["a"], table["b"], table["p"]):
            grid[bi[b], ai[a]] = p
        if np.isnan(grid).any():
            fail("phase grid is not complete (missing (a, b) cells)")
        mesh = ax.pcolormesh(a_vals, b_vals, grid, vmin=0.0, vmax=1.0,
                             shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="operating fraction p")

    if args.overlay:
        overlay = read_table(args.overlay, "calibration")
        rows = list(zip(overlay["theta"], overlay["f"], overlay["a"], overlay["b"]))
        if args.overlay_theta is not None:
            rows = [r for r in rows if abs(r[0] - args.overlay_theta) < 1e-12]
        if rows:
            ax.plot([r[2] for r in rows], [r[3] for r in rows], "o-",
                    color="black", ms=4, lw=1, label="calibrated trajectory")
            for _, f, a, b in rows[:: max(1, len(rows) // 6)]:
                ax.annotate(f"f={f:g}", (a, b), fontsize=6,
                            textcoords="offset points", xytext=(4, 3))
            ax.legend(loc="upper left", fontsize=8)

    ax.set_xlabel("capital shortfall a")
    ax.set_ylabel("coupling b")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
