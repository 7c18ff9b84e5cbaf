"""Analytic core of the contagion model.

The surviving fraction of banks evolves under the scalar iteration map
``F(p) = 1 - CDF(a - b*p)`` where ``a`` measures the average capital
shortfall and ``b >= 0`` the interbank coupling strength, both in units of
the balance-sheet noise scale. This module finds and classifies the fixed
points of that map, locates the bistable wedge and its tangency bounds,
and builds the derived sweeps (hysteresis cycles, phase diagrams, minimum
leverage curves, collateral-adjusted parameters).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .distributions import (
    Family,
    LocationScaleDistribution,
    peak_density,
    std_cdf,
    std_pdf,
)

# Tolerances shared by every operation in this module.
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000
ROOT_TOL = 1e-12
TANGENCY_TOL = 1e-6

_GRID_POINTS = 10_001
_P_GRID = np.linspace(0.0, 1.0, _GRID_POINTS)


class NonConvergence(RuntimeError):
    """Fixed-point iteration exhausted its iteration budget."""


class Stability(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


class Regime(Enum):
    MONOSTABLE = "monostable"
    BISTABLE = "bistable"
    TANGENT_LOWER = "tangent_lower"
    TANGENT_UPPER = "tangent_upper"


@dataclass(frozen=True)
class MeanFieldParams:
    """Dimensionless parameters of the iteration map.

    ``a``: (mean liabilities - mean non-interbank assets) / noise scale.
    ``b``: (average degree * average loan) / noise scale; never negative,
    zero meaning no interbank lending.
    """

    a: float
    b: float
    dist: LocationScaleDistribution

    def __post_init__(self):
        if not self.b >= 0:
            raise ValueError(f"coupling b must be >= 0, got {self.b}")


@dataclass(frozen=True)
class FixedPointSolution:
    """Classified roots of p = F(p) plus the bistability geometry."""

    roots: tuple[tuple[float, Stability], ...]
    regime: Regime
    x_extrema: tuple[float, float] | None
    bounds: tuple[float, float] | None
    b_critical: float


@dataclass(frozen=True)
class HysteresisResult:
    """Forward (rising a, warm-started from p=1) and backward curves."""

    a: np.ndarray
    forward: np.ndarray
    backward: np.ndarray


@dataclass(frozen=True)
class PhaseDiagram:
    """Equilibrium fraction on an (a, b) grid; entry [i, j] is (a_i, b_j)."""

    a_grid: np.ndarray
    b_grid: np.ndarray
    p: np.ndarray
    p0: float


def critical_coupling(dist: LocationScaleDistribution) -> float:
    """Coupling above which three fixed points become possible.

    Equals the reciprocal peak density of the noise distribution
    (sqrt(2*pi) for the normal family).
    """
    return 1.0 / peak_density(dist)


def iterate_map(params: MeanFieldParams, p: float) -> float:
    """One synchronous round: expected surviving fraction after the shock."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return 1.0 - float(std_cdf(params.dist, params.a - params.b * p))


def solve_fixed_point(params: MeanFieldParams, p0: float = 1.0,
                      tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> tuple[float, int]:
    """Iterate p <- F(p) from ``p0`` until successive values agree to ``tol``.

    The map is monotone and bounded, so the orbit converges to the stable
    (or tangent) root whose basin contains ``p0``. Returns the converged
    value and the number of iterations used.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    p = float(p0)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0}")
    for iteration in range(1, max_iter + 1):
        nxt = iterate_map(params, p)
        if abs(nxt - p) <= tol:
            return nxt, iteration
        p = nxt
    raise NonConvergence(
        f"no fixed point to tol={tol} within {max_iter} iterations "
        f"(a={params.a}, b={params.b})")


def tangency_offset(dist: LocationScaleDistribution, b: float) -> float:
    """Positive offset s* where the map slope equals one: b*pdf(s*) = 1.

    Defined for b > critical coupling; both families admit a closed form
    because their densities are invertible on [0, inf).
    """
    b_c = critical_coupling(dist)
    if not b > b_c:
        raise ValueError(f"tangency requires b > {b_c}, got {b}")
    if dist.family is Family.NORMAL:
        return math.sqrt(2.0 * math.log(b / b_c))
    nu = dist.dof
    ratio = (peak_density(dist) * b) ** (2.0 / (nu + 1.0))
    return math.sqrt(nu * (ratio - 1.0))


def hysteresis_bounds(b: float, dist: LocationScaleDistribution) -> tuple[float, float] | None:
    """Range (a1, a2) of shortfall values with three fixed points.

    None when b is at or below the critical coupling. Both bounds come from
    the tangency condition: at offset s = +-s* the map touches the diagonal,
    giving a = b*(1 - CDF(s)) + s.
    """
    if b <= critical_coupling(dist):
        return None
    s = tangency_offset(dist, b)
    a1 = b * (1.0 - float(std_cdf(dist, s))) + s
    a2 = b * (1.0 - float(std_cdf(dist, -s))) - s
    return a1, a2


def branching_number(params: MeanFieldParams, x: float) -> float:
    """Expected new distresses triggered by one distress at state x.

    This is the map slope b*pdf(a - b*x); it peaks at x = a/b with value
    b times the peak density, and equals one exactly at the tangency points.
    """
    return params.b * float(std_pdf(params.dist, params.a - params.b * x))


def capital_relation(E: float, sigma: float, b: float, p: float) -> float:
    """Shortfall parameter implied by aggregate capital E at state p."""
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    return -E / sigma + b * p


def _map_on_grid(params: MeanFieldParams) -> np.ndarray:
    x = params.a - params.b * _P_GRID
    return 1.0 - np.asarray(std_cdf(params.dist, x))


def _bisect_root(params: MeanFieldParams, lo: float, hi: float) -> float:
    # g(p) = p - F(p) changes sign on [lo, hi]; plain bisection is enough
    # because g has at most three roots and a bounded derivative.
    g_lo = lo - iterate_map(params, lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        g_mid = mid - iterate_map(params, mid)
        if g_mid == 0.0:
            return mid
        if (g_lo < 0.0) == (g_mid < 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
        if hi - lo <= ROOT_TOL:
            break
    return 0.5 * (lo + hi)


def classify_fixed_points(params: MeanFieldParams) -> FixedPointSolution:
    """Find every root of p = F(p) on [0, 1] and classify the regime.

    Roots come from a uniform 10^4-point sign scan refined by bisection;
    stability from the map slope at each root. The regime label uses the
    analytic tangency bounds, with a degenerate (tangent) label when the
    shortfall sits within TANGENCY_TOL of a bound.
    """
    g = _P_GRID - _map_on_grid(params)
    roots: list[float] = [float(_P_GRID[i]) for i in np.flatnonzero(g == 0.0)]
    crossings = np.flatnonzero((g[:-1] > 0.0) != (g[1:] > 0.0))
    for i in crossings:
        if g[i] == 0.0 or g[i + 1] == 0.0:
            continue  # grid-exact root already collected
        roots.append(_bisect_root(params, float(_P_GRID[i]), float(_P_GRID[i + 1])))
    roots.sort()

    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 1e-9:
            deduped.append(r)

    classified = tuple(
        (r, Stability.STABLE if branching_number(params, r) < 1.0 else Stability.UNSTABLE)
        for r in deduped
    )

    b_c = critical_coupling(params.dist)
    bounds = hysteresis_bounds(params.b, params.dist)
    x_extrema = None
    regime = Regime.MONOSTABLE
    if bounds is not None:
        s = tangency_offset(params.dist, params.b)
        x_extrema = ((params.a - s) / params.b, (params.a + s) / params.b)
        a1, a2 = bounds
        if abs(params.a - a1) <= TANGENCY_TOL:
            regime = Regime.TANGENT_LOWER
        elif abs(params.a - a2) <= TANGENCY_TOL:
            regime = Regime.TANGENT_UPPER
        elif a1 < params.a < a2:
            regime = Regime.BISTABLE
    return FixedPointSolution(classified, regime, x_extrema, bounds, b_c)


def hysteresis_sweep(b: float, a_grid: Sequence[float],
                     dist: LocationScaleDistribution,
                     tol: float = DEFAULT_TOL,
                     max_iter: int = DEFAULT_MAX_ITER) -> HysteresisResult:
    """Path-dependent equilibrium curves along an ascending grid of a.

    The forward curve walks the grid upward warm-starting from p = 1, the
    backward curve walks downward from p = 0; in the bistable regime the two
    disagree between the tangency bounds, producing the hysteresis cycle.
    """
    a = np.asarray(a_grid, dtype=float)
    if a.ndim != 1 or a.size < 2:
        raise ValueError("a_grid must be a 1-D grid with at least 2 points")
    if np.any(np.diff(a) <= 0):
        raise ValueError("a_grid must be strictly ascending")

    forward = np.empty_like(a)
    p = 1.0
    for i, ai in enumerate(a):
        p, _ = solve_fixed_point(MeanFieldParams(float(ai), b, dist), p, tol, max_iter)
        forward[i] = p

    backward = np.empty_like(a)
    p = 0.0
    for i in range(a.size - 1, -1, -1):
        p, _ = solve_fixed_point(MeanFieldParams(float(a[i]), b, dist), p, tol, max_iter)
        backward[i] = p

    return HysteresisResult(a, forward, backward)


def phase_diagram(a_grid: Sequence[float], b_grid: Sequence[float], p0: float,
                  dist: LocationScaleDistribution,
                  tol: float = DEFAULT_TOL,
                  max_iter: int = DEFAULT_MAX_ITER) -> PhaseDiagram:
    """Equilibrium fraction from a fixed start p0 over an (a, b) grid."""
    a = np.asarray(a_grid, dtype=float)
    b = np.asarray(b_grid, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("grids must be nonempty")
    p = np.empty((a.size, b.size))
    for j, bj in enumerate(b):
        for i, ai in enumerate(a):
            p[i, j], _ = solve_fixed_point(
                MeanFieldParams(float(ai), float(bj), dist), p0, tol, max_iter)
    return PhaseDiagram(a, b, p, p0)


def leverage_min(theta: float, sigma_frac: float,
                 dist: LocationScaleDistribution) -> float:
    """Smallest capital-to-assets ratio that rules out a systemic jump.

    ``theta`` is the fraction of assets lent on the interbank market and
    ``sigma_frac`` the noise scale as a fraction of mean total assets. Below
    the critical fraction theta_c = sigma_frac * b_c no jump exists and the
    criterion imposes no floor, so 0 is returned. Above it the floor is
    sigma_frac * s* + theta * CDF(-s*) with s* the tangency offset at
    coupling b = theta / sigma_frac.
    """
    if not 0.0 < theta <= 1.0:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    if not sigma_frac > 0:
        raise ValueError(f"sigma_frac must be > 0, got {sigma_frac}")
    theta_c = sigma_frac * critical_coupling(dist)
    if theta <= theta_c:
        return 0.0
    s = tangency_offset(dist, theta / sigma_frac)
    return sigma_frac * s + theta * float(std_cdf(dist, -s))


def collateral_transform(mu_L: float, mu_g: float, zJ: float, sigma: float,
                         q: float, dist: LocationScaleDistribution) -> MeanFieldParams:
    """Map parameters when a fraction q of a defaulted loan is recovered.

    q = 0 reproduces the uncollateralized parameters; q = 1 removes the
    interbank interaction entirely (b' = 0) and folds the loans into the
    shortfall term.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"collateral fraction q must lie in [0, 1], got {q}")
    a_prime = (mu_L - mu_g + q * zJ) / sigma
    b_prime = zJ * (1.0 - q) / sigma
    return MeanFieldParams(a_prime, b_prime, dist)
