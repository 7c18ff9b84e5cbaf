#!/usr/bin/env python3
"""Ensemble mean (with error bars) over a liability sweep, plus the analytic
fixed-point line.

Inputs: per-trial CSV from `contagion simulate --sweep-mu-l` and its JSON
sidecar (which carries the per-point means and fixed points).
"""

import argparse
from collections import defaultdict

import matplotlib.pyplot as plt

from figcsv import read_sidecar, read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--summary", required=True, help="JSON sidecar of the run")
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    table = read_table(args.input, "trials")
    sidecar = read_sidecar(args.summary)
    summaries = sorted(sidecar.get("summaries", []), key=lambda s: s["mu_l"])

    by_point = defaultdict(list)
    for mu_l, p in zip(table["mu_l"], table["p_final"]):
        by_point[mu_l].append(p)

    fig, ax = plt.subplots(figsize=(6, 4))
    if summaries:
        xs = [s["mu_l"] for s in summaries]
        ax.errorbar(xs, [s["mean_p"] for s in summaries],
                    yerr=[s["std_p"] for s in summaries],
                    fmt="o", ms=3, capsize=2, color="tab:green",
                    label="ensemble mean +- std")
        ax.plot(xs, [s["meanfield_p"] for s in summaries],
                color="black", lw=1, label="analytic fixed point")
        ax.legend(fontsize=8)
    elif by_point:
        xs = sorted(by_point)
        means = [sum(by_point[x]) / len(by_point[x]) for x in xs]
        ax.plot(xs, means, "o-", ms=3, color="tab:green")
    ax.set_xlabel("mean liabilities")
    ax.set_ylabel("surviving fraction p")
    ax.set_ylim(-0.05, 1.05)
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
