#!/usr/bin/env python3
"""Hysteresis cycle: forward and backward equilibrium curves over a.

Input: CSV from `contagion hysteresis` (a, p_forward, p_backward).
"""

import argparse

import matplotlib.pyplot as plt
import numpy as np

from figcsv import read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    table = read_table(args.input, "hysteresis")
    a = np.array(table["a"])
    fwd = np.array(table["p_forward"])
    bwd = np.array(table["p_backward"])

    fig, ax = plt.subplots(figsize=(6, 4))
    if a.size:
        ax.plot(a, fwd, color="tab:blue", label="forward (start all operating)")
        ax.plot(a, bwd, color="tab:orange", ls="--", label="backward (start all distressed)")
        # mark the largest discontinuity of each branch with an arrow
        for curve, color, direction in ((fwd, "red", -1), (bwd, "red", 1)):
            steps = np.diff(curve)
            if steps.size and np.abs(steps).max() > 0.1:
                i = int(np.argmax(np.abs(steps)))
                x = 0.5 * (a[i] + a[i + 1])
                y0, y1 = sorted((curve[i], curve[i + 1]))
                ax.annotate("", xy=(x, y1 if direction > 0 else y0),
                            xytext=(x, y0 if direction > 0 else y1),
                            arrowprops=dict(arrowstyle="->", color=color, lw=1.5))
        ax.legend(loc="center left", fontsize=8)
    ax.set_xlabel("capital shortfall a")
    ax.set_ylabel("operating fraction p")
    ax.set_ylim(-0.05, 1.05)
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
