#!/usr/bin/env python3
"""Frequency distribution of the surviving fraction across trials.

Input: per-trial CSV from `contagion simulate` (mu_l, trial, p_final, rounds).
"""

import argparse

import matplotlib.pyplot as plt

from figcsv import read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--bins", type=int, default=100)
    args = parser.parse_args(argv)

    table = read_table(args.input, "trials")
    fig, ax = plt.subplots(figsize=(6, 4))
    if table["p_final"]:
        ax.hist(table["p_final"], bins=args.bins, range=(0.0, 1.0),
                color="tab:blue", edgecolor="none")
    ax.set_xlabel("surviving fraction p")
    ax.set_ylabel("trials")
    ax.set_xlim(0.0, 1.0)
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
