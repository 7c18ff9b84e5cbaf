"""Shared input handling for the figure scripts.

Every script consumes CSV/JSON files emitted by the contagion CLI and only
draws: no model quantity is ever recomputed here. Inputs are validated
against the CLI's column schemas; a mismatch aborts with a column diff.
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

SCHEMAS = {
    "cobweb": ["p", "f_p"],
    "hysteresis": ["a", "p_forward", "p_backward"],
    "phase": ["a", "b", "p"],
    "leverage": ["sigma_frac", "theta", "gamma_min"],
    "trials": ["mu_l", "trial", "p_final", "rounds"],
    "trials_alpha": ["alpha", "mu_l", "trial", "p_final", "rounds"],
    "calibration": ["theta", "f", "a", "b", "p"],
}


@dataclass
class FigureSpec:
    figure_id: str
    inputs: list[str]
    output: str
    options: dict = field(default_factory=dict)


def fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(1)


def read_table(path: str | Path, figure_id: str) -> dict[str, list[float]]:
    """Load a CLI CSV as columns of floats, enforcing the expected header."""
    expected = SCHEMAS[figure_id]
    path = Path(path)
    if not path.exists():
        fail(f"input file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            fail(f"{path}: empty file (expected header {','.join(expected)})")
        if header != expected:
            missing = [c for c in expected if c not in header]
            extra = [c for c in header if c not in expected]
            fail(f"{path}: header mismatch for {figure_id!r}: "
                 f"missing columns {missing or 'none'}, unexpected {extra or 'none'}")
        columns: dict[str, list[float]] = {name: [] for name in expected}
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(expected):
                fail(f"{path}: line {line_no} has {len(row)} fields, expected {len(expected)}")
            for name, value in zip(expected, row):
                try:
                    columns[name].append(float(value))
                except ValueError:
                    fail(f"{path}: line {line_no}: {value!r} is not numeric")
    return columns


def read_sidecar(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        fail(f"sidecar not found: {path}")
    return json.loads(path.read_text(encoding="utf-8"))


def save(fig, output: str | Path) -> None:
    fig.savefig(output, dpi=150, bbox_inches="tight")
    print(f"wrote {output}")
