#!/usr/bin/env python3
"""Iteration-map curve against the diagonal, with optional root markers.

Input: curve CSV from `contagion meanfield --curve-out` (p, f_p); the
command's JSON report can be passed to mark the fixed points.
"""

import argparse

import matplotlib.pyplot as plt

from figcsv import read_sidecar, read_table, save


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--solution", help="JSON report with the classified roots")
    args = parser.parse_args(argv)

    table = read_table(args.input, "cobweb")
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(5, 6), sharex=True)
    p, f_p = table["p"], table["f_p"]
    if p:
        top.plot(p, f_p, color="tab:blue", label="F(p)")
        top.plot([0, 1], [0, 1], color="gray", lw=0.8, label="diagonal")
        bottom.plot(p, [x - y for x, y in zip(p, f_p)], color="tab:blue")
        bottom.axhline(0.0, color="gray", lw=0.8)
    if args.solution:
        report = read_sidecar(args.solution)
        roots = report.get("config", report).get("roots", report.get("roots", []))
        for root in roots:
            marker = "o" if root["stability"] == "stable" else "s"
            top.plot(root["p"], root["p"], marker, color="red", ms=5)
            bottom.plot(root["p"], 0.0, marker, color="red", ms=5)
    top.set_ylabel("F(p)")
    top.legend(fontsize=8)
    bottom.set_xlabel("p")
    bottom.set_ylabel("p - F(p)")
    save(fig, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
