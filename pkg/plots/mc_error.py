#!/usr/bin/env python3
"""Heatmap of the ensemble-vs-analytic error over connection probability and
mean liabilities.

Inputs: per-trial CSV from `contagion simulate --alpha-list ... --sweep-mu-l ...`
and its JSON sidecar (per-point absolute errors).
"""

import argparse

import matplotlib.pyplot as plt
import numpy as np

from figcsv import fail, read_sidecar, read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--summary", required=True, help="JSON sidecar of the run")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    read_table(args.input, "trials_alpha")  # schema check on the trial rows
    summaries = read_sidecar(args.summary).get("summaries", [])
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if summaries:
        if any("alpha" not in s for s in summaries):
            fail("summaries carry no alpha column; run simulate with --alpha-list")
        alphas = sorted({s["alpha"] for s in summaries})
        mu_ls = sorted({s["mu_l"] for s in summaries})
        grid = np.full((len(alphas), len(mu_ls)), np.nan)
        for s in summaries:
            grid[alphas.index(s["alpha"]), mu_ls.index(s["mu_l"])] = s["abs_error"]
        mesh = ax.pcolormesh(mu_ls, alphas, grid, shading="nearest", cmap="magma")
        ax.set_yscale("log")
        fig.colorbar(mesh, ax=ax, label="|ensemble mean - fixed point|")
    ax.set_xlabel("mean liabilities")
    ax.set_ylabel("connection probability")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
