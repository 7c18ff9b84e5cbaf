#!/usr/bin/env python3
"""Minimum safe leverage against the interbank share, one curve per noise scale.

Input: CSV from `contagion leverage` (sigma_frac, theta, gamma_min).
"""

import argparse

import matplotlib.pyplot as plt

from figcsv import read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    table = read_table(args.input, "leverage")
    fig, ax = plt.subplots(figsize=(6, 4))
    fracs = sorted(set(table["sigma_frac"]))
    for frac in fracs:
        rows = sorted(
            (t, g) for s, t, g in zip(table["sigma_frac"], table["theta"],
                                      table["gamma_min"]) if s == frac)
        ax.plot([r[0] for r in rows], [r[1] for r in rows],
                label=f"noise scale = {frac:g} of mean assets")
    if fracs:
        ax.legend(fontsize=8)
    ax.set_xlabel("interbank share theta")
    ax.set_ylabel("minimum leverage")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
