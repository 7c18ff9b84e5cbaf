"""Command-line front end.

Every experiment writes a CSV (stable schema, LF endings, deterministic for
a given command line and seed) plus a JSON sidecar carrying the resolved
configuration, the seed and a timestamp. Exit codes: 0 success, 1 numerical
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .calibration import load_balance_sheets, stability_scan, summarize
from .cascade import (
    BalanceSheetParams,
    CascadeConfig,
    Recovery,
    meanfield_bridge,
    monte_carlo,
)
from .distributions import NORMAL, LocationScaleDistribution, student_t
from .meanfield import (
    MeanFieldParams,
    NonConvergence,
    branching_number,
    classify_fixed_points,
    hysteresis_sweep,
    iterate_map,
    leverage_min,
    phase_diagram,
    solve_fixed_point,
)
from .netgen import NetworkConfig


def parse_dist(text: str) -> LocationScaleDistribution:
    """--dist values: 'normal' or 't:<dof>' (e.g. t:2)."""
    if text == "normal":
        return NORMAL
    if text.startswith("t:"):
        try:
            return student_t(float(text[2:]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad Student-t spec {text!r}: {exc}") from None
    raise argparse.ArgumentTypeError(f"unknown distribution {text!r} (use normal or t:DOF)")


def parse_grid(text: str) -> np.ndarray:
    """Grid spec 'min:max:steps' -> inclusive linspace."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid spec must be min:max:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}") from None
    if steps < 1:
        raise argparse.ArgumentTypeError("grid needs at least one step")
    return np.linspace(lo, hi, steps)


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def _atomic_write(path: Path, content: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(content)
    os.replace(tmp, path)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    _atomic_write(path, "\n".join(lines) + "\n")


def write_sidecar(path: Path, command: str, config: dict, extra: dict | None = None) -> None:
    payload = {
        "command": command,
        "config": config,
        "created_unix": time.time(),
        "version": __version__,
    }
    if extra:
        payload.update(extra)
    _atomic_write(path.with_suffix(".json"), json.dumps(payload, indent=2) + "\n")


def _maybe_json_rows(args, header, rows, command, config, extra=None) -> None:
    out = Path(args.out)
    if getattr(args, "format", "csv") == "json":
        payload = {
            "command": command,
            "config": config,
            "columns": header,
            "rows": [[float(v) for v in row] for row in rows],
        }
        if extra:
            payload.update(extra)
        payload["created_unix"] = time.time()
        _atomic_write(out, json.dumps(payload, indent=2) + "\n")
    else:
        write_csv(out, header, rows)
        write_sidecar(out, command, config, extra)


def _dist_label(dist: LocationScaleDistribution) -> str:
    return "normal" if dist is NORMAL or dist.dof is None else f"t:{dist.dof:g}"


# ----------------------------------------------------------------- commands


def cmd_meanfield(args) -> int:
    params = MeanFieldParams(args.a, args.b, args.dist)
    solution = classify_fixed_points(params)
    fixed, iterations = solve_fixed_point(params, args.p0)
    report = {
        "a": args.a,
        "b": args.b,
        "dist": _dist_label(args.dist),
        "b_critical": solution.b_critical,
        "regime": solution.regime.value,
        "roots": [
            {"p": p, "stability": s.value, "branching": branching_number(params, p)}
            for p, s in solution.roots
        ],
        "bounds": list(solution.bounds) if solution.bounds else None,
        "x_extrema": list(solution.x_extrema) if solution.x_extrema else None,
        "from_p0": {"p0": args.p0, "p": fixed, "iterations": iterations},
    }
    print(json.dumps(report, indent=2))
    if args.curve_out:
        grid = np.linspace(0.0, 1.0, args.curve_points)
        rows = [(p, iterate_map(params, float(p))) for p in grid]
        write_csv(Path(args.curve_out), ["p", "f_p"], rows)
        write_sidecar(Path(args.curve_out), "meanfield", report)
    return 0


def cmd_hysteresis(args) -> int:
    grid = np.linspace(args.a_min, args.a_max, args.steps)
    result = hysteresis_sweep(args.b, grid, args.dist, max_iter=args.max_iter)
    rows = zip(result.a, result.forward, result.backward)
    config = {
        "b": args.b, "a_min": args.a_min, "a_max": args.a_max,
        "steps": args.steps, "dist": _dist_label(args.dist),
    }
    _maybe_json_rows(args, ["a", "p_forward", "p_backward"], rows, "hysteresis", config)
    return 0


def cmd_phase(args) -> int:
    diag = phase_diagram(args.a_grid, args.b_grid, args.p0, args.dist,
                         max_iter=args.max_iter)
    rows = [
        (a, b, diag.p[i, j])
        for i, a in enumerate(diag.a_grid)
        for j, b in enumerate(diag.b_grid)
    ]
    config = {
        "a_grid": [float(v) for v in diag.a_grid],
        "b_grid": [float(v) for v in diag.b_grid],
        "p0": args.p0, "dist": _dist_label(args.dist),
    }
    _maybe_json_rows(args, ["a", "b", "p"], rows, "phase", config)
    return 0


def cmd_leverage(args) -> int:
    rows = [
        (frac, theta, leverage_min(float(theta), float(frac), args.dist))
        for frac in args.sigma_frac
        for theta in args.theta_grid
    ]
    config = {
        "sigma_frac": args.sigma_frac,
        "theta_grid": [float(v) for v in args.theta_grid],
        "dist": _dist_label(args.dist),
    }
    _maybe_json_rows(args, ["sigma_frac", "theta", "gamma_min"], rows, "leverage", config)
    return 0


def _network_from_args(args) -> NetworkConfig:
    return NetworkConfig(
        kind={"er": "erdos_renyi", "ws": "watts_strogatz", "cp": "core_periphery",
              "complete": "complete"}[args.network],
        alpha=args.alpha, c=args.c, beta=args.beta,
        n_core=args.n_core, alpha_core=args.alpha_core, m_links=args.m_links,
    )


def cmd_simulate(args) -> int:
    network = _network_from_args(args)
    pop = BalanceSheetParams(
        n_banks=args.m, mu_assets=args.mu_a, sigma_assets=args.sigma_a,
        mu_liabilities=args.mu_l, sigma_liabilities=args.sigma_l, dist=args.dist)
    config = CascadeConfig(theta=args.theta, q=args.q,
                           recovery=Recovery(args.recovery),
                           max_rounds=args.max_rounds)
    workers = int(os.environ.get("CONTAGION_THREADS", "1"))

    mu_ls = args.sweep_mu_l if args.sweep_mu_l is not None else np.array([args.mu_l])
    alphas = args.alpha_list if args.alpha_list else [None]

    header = ["mu_l", "trial", "p_final", "rounds"]
    if args.alpha_list:
        header = ["alpha"] + header
    rows = []
    summaries = []
    for alpha in alphas:
        net = dataclasses.replace(network, alpha=alpha) if alpha is not None else network
        for mu_l in mu_ls:
            pop_i = dataclasses.replace(pop, mu_liabilities=float(mu_l))
            stats = monte_carlo(pop_i, net, config, args.trials, args.seed,
                                workers=workers)
            fp, _ = solve_fixed_point(meanfield_bridge(args.theta, pop_i), args.p0)
            for t, (p, r) in enumerate(zip(stats.p_values, stats.rounds)):
                row = [mu_l, t, p, r]
                if args.alpha_list:
                    row = [alpha] + row
                rows.append(row)
            summary = {
                "mu_l": float(mu_l),
                "mean_p": stats.mean_p,
                "std_p": stats.std_p,
                "meanfield_p": fp,
                "abs_error": abs(stats.mean_p - fp),
                "round_limit_count": stats.round_limit_count,
                "histogram": stats.histogram.tolist(),
            }
            if args.alpha_list:
                summary["alpha"] = alpha
            summaries.append(summary)

    resolved = {
        "network": dataclasses.asdict(network), "m": args.m,
        "mu_a": args.mu_a, "sigma_a": args.sigma_a,
        "mu_l": args.mu_l, "sigma_l": args.sigma_l,
        "dist": _dist_label(args.dist), "theta": args.theta, "q": args.q,
        "recovery": args.recovery, "max_rounds": args.max_rounds,
        "trials": args.trials, "seed": args.seed, "p0": args.p0,
        "sweep_mu_l": [float(v) for v in mu_ls],
        "alpha_list": args.alpha_list,
    }
    out = Path(args.out)
    write_csv(out, header, rows)
    write_sidecar(out, "simulate", resolved, {"summaries": summaries})
    return 0


def cmd_calibrate(args) -> int:
    records = load_balance_sheets(args.data)
    summary = summarize(records, args.country, args.year)
    scan = stability_scan(summary, args.theta_list, args.f_grid, args.dist, args.p0)
    rows = [
        (scan.theta[i], scan.f[j], scan.a[i, j], scan.b[i, j], scan.p[i, j])
        for i in range(scan.theta.size)
        for j in range(scan.f.size)
    ]
    config = {
        "data": str(args.data), "country": args.country, "year": args.year,
        "theta_list": args.theta_list, "f_grid": [float(v) for v in args.f_grid],
        "p0": args.p0, "dist": _dist_label(args.dist), "seed": None,
    }
    extra = {"summary": dataclasses.asdict(summary)}
    _maybe_json_rows(args, ["theta", "f", "a", "b", "p"], rows, "calibrate", config, extra)
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contagion",
        description="Stylized interbank-contagion experiments (CSV-first outputs).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out=True):
        p.add_argument("--dist", type=parse_dist, default=NORMAL,
                       help="noise family: normal or t:DOF (default normal)")
        if needs_out:
            p.add_argument("--out", required=True, help="output CSV path")
            p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("meanfield", help="classify the fixed points at one (a, b)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--curve-out", help="also write the map curve as CSV")
    p.add_argument("--curve-points", type=int, default=513)
    add_common(p, needs_out=False)
    p.set_defaults(func=cmd_meanfield)

    p = sub.add_parser("hysteresis", help="forward/backward equilibrium curves over a")
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--a-min", type=float, required=True)
    p.add_argument("--a-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--max-iter", type=int, default=100_000)
    add_common(p)
    p.set_defaults(func=cmd_hysteresis)

    p = sub.add_parser("phase", help="equilibrium fraction over an (a, b) grid")
    p.add_argument("--a-grid", type=parse_grid, required=True, metavar="MIN:MAX:STEPS")
    p.add_argument("--b-grid", type=parse_grid, required=True, metavar="MIN:MAX:STEPS")
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--max-iter", type=int, default=100_000)
    add_common(p)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("leverage", help="minimum safe leverage vs interbank share")
    p.add_argument("--sigma-frac", type=parse_float_list, required=True,
                   help="comma list of noise scales as fractions of mean assets")
    p.add_argument("--theta-grid", type=parse_grid, required=True, metavar="MIN:MAX:STEPS")
    add_common(p)
    p.set_defaults(func=cmd_leverage)

    p = sub.add_parser("simulate", help="Monte Carlo cascade ensemble (optionally swept)")
    p.add_argument("--network", choices=["er", "ws", "cp", "complete"], default="er")
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--c", type=int, default=4)
    p.add_argument("--beta", type=float, default=0.1)
    p.add_argument("--n-core", type=int, default=50)
    p.add_argument("--alpha-core", type=float, default=0.1)
    p.add_argument("--m-links", type=int, default=15)
    p.add_argument("--m", type=int, default=500)
    p.add_argument("--mu-a", type=float, default=1000.0)
    p.add_argument("--sigma-a", type=float, default=30.0)
    p.add_argument("--mu-l", type=float, default=900.0)
    p.add_argument("--sigma-l", type=float, default=50.0)
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--recovery", choices=["monotone", "reversible"], default="monotone")
    p.add_argument("--max-rounds", type=int, default=10_000)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--sweep-mu-l", type=parse_grid, metavar="MIN:MAX:STEPS")
    p.add_argument("--alpha-list", type=parse_float_list,
                   help="comma list of connection probabilities (ER only)")
    p.add_argument("--config", type=Path, help="JSON file overriding the flags above")
    add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("calibrate", help="stability scan from a balance-sheet CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--country", required=True)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--theta-list", type=parse_float_list, required=True)
    p.add_argument("--f-grid", type=parse_grid, required=True, metavar="MIN:MAX:STEPS")
    p.add_argument("--p0", type=float, default=1.0)
    add_common(p)
    p.set_defaults(func=cmd_calibrate)

    return parser


def _apply_config_file(args, parser) -> None:
    overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            parser.error(f"unknown config key {key!r}")
        if attr == "dist":
            value = parse_dist(value)
        setattr(args, attr, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "b", None) is not None and args.b < 0:
        parser.error(f"invariant violated: coupling b must be >= 0 (got {args.b})")
    if getattr(args, "config", None):
        _apply_config_file(args, parser)
    try:
        return args.func(args)
    except NonConvergence as exc:
        print(f"contagion: numerical failure: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"contagion: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
