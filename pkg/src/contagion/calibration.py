"""Balance-sheet ingestion and stability scans for real banking systems.

The scan pins the noise scale to a fraction f of mean tier-1 capital
(sigma = f * mu_E) and the interbank share to theta, which puts the system
at a = (theta * mu_A - mu_E) / sigma and b = theta * mu_A / sigma; the
identity a - b = -1/f holds for every cell.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .distributions import LocationScaleDistribution
from .meanfield import MeanFieldParams, solve_fixed_point

CSV_HEADER = ["bank_id", "country", "year", "total_assets", "tier1_capital"]


class BalanceSheetError(ValueError):
    """Malformed balance-sheet input; the message names the offending line."""


@dataclass(frozen=True)
class BalanceSheetRecord:
    bank_id: str
    country: str
    year: int
    total_assets: float
    tier1_capital: float | None

    @property
    def included(self) -> bool:
        # Banks without a positive tier-1 figure stay in the record list but
        # are excluded from every summary statistic.
        return self.tier1_capital is not None and self.tier1_capital > 0


@dataclass(frozen=True)
class CalibrationSummary:
    mu_A: float
    std_A: float
    mu_E: float
    std_E: float
    leverage: float
    n_banks: int
    country: str
    year: int
    std_degenerate: bool = False


def _parse_row(row: list[str], line_no: int) -> BalanceSheetRecord:
    if len(row) != len(CSV_HEADER):
        raise BalanceSheetError(
            f"line {line_no}: expected {len(CSV_HEADER)} fields, got {len(row)}")
    bank_id, country, year_s, assets_s, tier1_s = (v.strip() for v in row)
    try:
        year = int(year_s)
    except ValueError:
        raise BalanceSheetError(f"line {line_no}: year {year_s!r} is not an integer") from None
    try:
        total_assets = float(assets_s)
    except ValueError:
        raise BalanceSheetError(
            f"line {line_no}: total_assets {assets_s!r} is not numeric") from None
    if not total_assets > 0:
        raise BalanceSheetError(f"line {line_no}: total_assets must be positive")
    tier1: float | None
    if tier1_s == "":
        tier1 = None
    else:
        try:
            tier1 = float(tier1_s)
        except ValueError:
            raise BalanceSheetError(
                f"line {line_no}: tier1_capital {tier1_s!r} is not numeric") from None
    return BalanceSheetRecord(bank_id, country, year, total_assets, tier1)


def load_balance_sheets(source) -> list[BalanceSheetRecord]:
    """Parse a balance-sheet CSV (path, text, or binary stream).

    Rows with missing or nonpositive tier-1 capital are retained but flagged
    excluded; structurally malformed rows raise with their line number.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return load_balance_sheets(fh)
    if isinstance(source, (bytes, bytearray)):
        return load_balance_sheets(io.StringIO(source.decode("utf-8")))
    if hasattr(source, "read") and isinstance(source.read(0), bytes):
        source = io.TextIOWrapper(source, encoding="utf-8")

    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise BalanceSheetError("empty balance-sheet file") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise BalanceSheetError(
            f"bad header: expected {','.join(CSV_HEADER)}, got {','.join(header)}")
    return [_parse_row(row, line_no) for line_no, row in enumerate(reader, start=2)]


def summarize(records: Iterable[BalanceSheetRecord], country: str,
              year: int) -> CalibrationSummary:
    """Means and sample standard deviations over included (country, year) records."""
    chosen = [r for r in records if r.included and r.country == country and r.year == year]
    if not chosen:
        raise BalanceSheetError(f"no usable records for country={country!r}, year={year}")
    assets = np.array([r.total_assets for r in chosen])
    capital = np.array([r.tier1_capital for r in chosen])
    degenerate = len(chosen) == 1
    std_a = 0.0 if degenerate else float(assets.std(ddof=1))
    std_e = 0.0 if degenerate else float(capital.std(ddof=1))
    mu_a = float(assets.mean())
    mu_e = float(capital.mean())
    return CalibrationSummary(
        mu_A=mu_a, std_A=std_a, mu_E=mu_e, std_E=std_e,
        leverage=mu_e / mu_a, n_banks=len(chosen),
        country=country, year=year, std_degenerate=degenerate,
    )


@dataclass(frozen=True)
class StabilityScan:
    """p(theta, f) matrix with the (a, b) coordinates of every cell."""

    theta: np.ndarray
    f: np.ndarray
    a: np.ndarray
    b: np.ndarray
    p: np.ndarray
    p0: float


def _scan_coords(summary: CalibrationSummary, theta: float, f: float) -> tuple[float, float]:
    sigma = f * summary.mu_E
    a = (theta * summary.mu_A - summary.mu_E) / sigma
    b = theta * summary.mu_A / sigma
    return a, b


def stability_scan(summary: CalibrationSummary, theta_grid: Sequence[float],
                   f_grid: Sequence[float], dist: LocationScaleDistribution,
                   p0: float = 1.0) -> StabilityScan:
    """Equilibrium surviving fraction over a (theta, f) grid."""
    theta = np.asarray(theta_grid, dtype=float)
    f = np.asarray(f_grid, dtype=float)
    if np.any(theta < 0) or np.any(theta > 1):
        raise ValueError("theta values must lie in [0, 1]")
    if np.any(f <= 0):
        raise ValueError("f values must be positive")
    a = np.empty((theta.size, f.size))
    b = np.empty_like(a)
    p = np.empty_like(a)
    for i, th in enumerate(theta):
        for j, fj in enumerate(f):
            a[i, j], b[i, j] = _scan_coords(summary, float(th), float(fj))
            params = MeanFieldParams(a[i, j], b[i, j], dist)
            p[i, j], _ = solve_fixed_point(params, p0)
    return StabilityScan(theta, f, a, b, p, p0)


@dataclass(frozen=True)
class OverlayPoint:
    f: float
    a: float
    b: float
    p: float


def trajectory_overlay(summary: CalibrationSummary, theta: float,
                       f_list: Sequence[float], dist: LocationScaleDistribution,
                       p0: float = 1.0) -> list[OverlayPoint]:
    """The (a, b) path traced by varying f at fixed theta, with fixed points.

    Suitable for plotting on top of a phase diagram; b falls as f rises
    (b = theta / (f * leverage)).
    """
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    points = []
    for f in f_list:
        if not f > 0:
            raise ValueError("f values must be positive")
        a, b = _scan_coords(summary, theta, float(f))
        p, _ = solve_fixed_point(MeanFieldParams(a, b, dist), p0)
        points.append(OverlayPoint(float(f), a, b, p))
    return points
