"""Synchronous default-cascade engine and Monte Carlo ensembles.

A bank is distressed when its total assets fall strictly below its
liabilities. Each round recomputes every bank's assets from the start-of-
round states of its borrowers (plus an optional collateral recovery on
defaulted loans) and updates all states simultaneously, repeating until the
state vector stops changing.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import numpy as np

from .distributions import NORMAL, LocationScaleDistribution, sample, substream
from .meanfield import MeanFieldParams, solve_fixed_point
from .netgen import ExposureNetwork, NetworkConfig, assign_loans

HISTOGRAM_BINS = 100


class Recovery(Enum):
    # Monotone: states can only switch to distressed (the default dynamics).
    # Reversible: a distressed bank whose assets recover returns to operating.
    MONOTONE = "monotone"
    REVERSIBLE = "reversible"


@dataclass(frozen=True)
class BankPopulation:
    """Per-bank balance sheets; liabilities are constant over time."""

    assets0: np.ndarray
    liabilities: np.ndarray
    state: np.ndarray

    def __post_init__(self):
        if not (self.assets0.shape == self.liabilities.shape == self.state.shape):
            raise ValueError("assets, liabilities and state must have equal length")

    @property
    def n_banks(self) -> int:
        return self.assets0.size


@dataclass(frozen=True)
class CascadeConfig:
    theta: float = 0.3
    q: float = 0.0
    recovery: Recovery = Recovery.MONOTONE
    max_rounds: int = 10_000

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")
        if not 0.0 <= self.q <= 1.0:
            # Over-collateralization (q > 1) is outside the modeled scope.
            raise ValueError(f"collateral fraction q must lie in [0, 1], got {self.q}")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")


@dataclass(frozen=True)
class CascadeResult:
    p_final: float
    rounds: int
    survivors_per_round: tuple[int, ...]
    final_state: np.ndarray
    round_limit_hit: bool = False


@dataclass(frozen=True)
class BalanceSheetParams:
    """Distributional recipe for initial balance sheets (location + scale)."""

    n_banks: int = 500
    mu_assets: float = 1000.0
    sigma_assets: float = 30.0
    mu_liabilities: float = 900.0
    sigma_liabilities: float = 50.0
    dist: LocationScaleDistribution = NORMAL


def initialize_banks(m: int, mu_assets: float, sigma_assets: float,
                     mu_liabilities: float, sigma_liabilities: float,
                     dist: LocationScaleDistribution,
                     rng: np.random.Generator,
                     rng_liabilities: np.random.Generator | None = None) -> BankPopulation:
    """Draw independent assets and liabilities; everyone starts operating.

    Draws are kept as sampled (negative values included) so the ensemble can
    be compared against the analytic map without truncation bias. A second
    generator may be supplied to put liabilities on their own stream.
    """
    assets = np.asarray(sample(dist, mu_assets, sigma_assets, rng, size=m), dtype=float)
    rng_l = rng_liabilities if rng_liabilities is not None else rng
    liabilities = np.asarray(
        sample(dist, mu_liabilities, sigma_liabilities, rng_l, size=m), dtype=float)
    return BankPopulation(assets, liabilities, np.ones(m, dtype=bool))


def run_cascade(banks: BankPopulation, net: ExposureNetwork,
                config: CascadeConfig) -> CascadeResult:
    """Propagate distress until the state vector repeats.

    Non-interbank assets are the initial assets minus what the bank actually
    lent out, so bank i's round-r assets are
    ``g_i + sum_j w_ij * S_j + q * sum_j w_ij * (1 - S_j)``
    evaluated on the start-of-round states (synchronous update). Ties
    (assets equal to liabilities) count as operating. ``rounds`` counts only
    the rounds in which at least one state changed.
    """
    if banks.n_banks != net.n_banks:
        raise ValueError("bank population and network sizes differ")
    w = net.weights
    lent = w.sum(axis=1)
    g = banks.assets0 - lent
    liabilities = banks.liabilities
    q = config.q
    reversible = config.recovery is Recovery.REVERSIBLE

    state = banks.state.astype(float)
    survivors = [int(state.sum())]
    seen = {state.tobytes()}
    rounds = 0
    limit_hit = True
    for _ in range(config.max_rounds):
        assets = g + q * lent + (1.0 - q) * (w @ state)
        healthy = assets >= liabilities
        new_state = healthy.astype(float) if reversible else state * healthy
        if np.array_equal(new_state, state):
            limit_hit = False
            break
        if new_state.tobytes() in seen:
            # Reversible dynamics can in principle cycle; stop on repetition.
            state = new_state
            survivors.append(int(state.sum()))
            rounds += 1
            limit_hit = False
            break
        seen.add(new_state.tobytes())
        state = new_state
        survivors.append(int(state.sum()))
        rounds += 1

    final = state.astype(bool)
    return CascadeResult(
        p_final=survivors[-1] / banks.n_banks,
        rounds=rounds,
        survivors_per_round=tuple(survivors),
        final_state=final,
        round_limit_hit=limit_hit,
    )


@dataclass(frozen=True)
class EnsembleStats:
    """Trial-level outcomes of a Monte Carlo ensemble."""

    p_values: np.ndarray
    rounds: np.ndarray
    mean_p: float
    std_p: float
    histogram: np.ndarray
    round_limit_count: int
    trials: int
    seed: int


def _single_trial(pop: BalanceSheetParams, network: NetworkConfig,
                  config: CascadeConfig, seed: int, trial: int) -> CascadeResult:
    # Three named substreams per trial: the network draw is independent of the
    # balance-sheet draws, so sweeping a location parameter keeps both the
    # topology and the standard variates fixed for a given trial index.
    rng_net = substream(seed, trial, "network")
    rng_assets = substream(seed, trial, "assets")
    rng_liab = substream(seed, trial, "liabilities")
    net = network.build(pop.n_banks, rng_net)
    banks = initialize_banks(pop.n_banks, pop.mu_assets, pop.sigma_assets,
                             pop.mu_liabilities, pop.sigma_liabilities,
                             pop.dist, rng_assets, rng_liab)
    weighted = assign_loans(net, config.theta, banks.assets0)
    return run_cascade(banks, weighted, config)


def monte_carlo(pop: BalanceSheetParams, network: NetworkConfig,
                config: CascadeConfig, trials: int, seed: int,
                workers: int | None = None) -> EnsembleStats:
    """Run independent trials (fresh network + fresh balance sheets each).

    Deterministic for a given seed: every trial owns named substreams and the
    aggregation is ordered by trial index, so the worker count never changes
    the result. ``workers`` defaults to the CONTAGION_THREADS environment
    variable (sequential when unset).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers is None:
        workers = int(os.environ.get("CONTAGION_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda t: _single_trial(pop, network, config, seed, t),
                range(trials)))
    else:
        results = [_single_trial(pop, network, config, seed, t) for t in range(trials)]

    p_values = np.array([r.p_final for r in results])
    rounds = np.array([r.rounds for r in results], dtype=int)
    hist, _ = np.histogram(p_values, bins=HISTOGRAM_BINS, range=(0.0, 1.0))
    return EnsembleStats(
        p_values=p_values,
        rounds=rounds,
        mean_p=float(p_values.mean()),
        std_p=float(p_values.std(ddof=1)) if trials > 1 else 0.0,
        histogram=hist,
        round_limit_count=sum(r.round_limit_hit for r in results),
        trials=trials,
        seed=seed,
    )


def meanfield_bridge(theta: float, pop: BalanceSheetParams) -> MeanFieldParams:
    """Map the simulation parameters onto the analytic map's (a, b).

    The combined noise scale is sqrt(sigma_A^2 + sigma_L^2); the coupling is
    theta * mu_A over that scale, and the shortfall is chosen so that
    a - b = (mu_L - mu_A) / scale.
    """
    sigma = float(np.hypot(pop.sigma_assets, pop.sigma_liabilities))
    b = theta * pop.mu_assets / sigma
    a = (pop.mu_liabilities - pop.mu_assets) / sigma + b
    return MeanFieldParams(a, b, pop.dist)


def compare_meanfield(stats, params, p0: float = 1.0) -> float:
    """Absolute gap between ensemble mean(s) and the analytic fixed point(s).

    A single ensemble gives |mean_p - p*|; paired sequences give the 2-norm
    of the per-point gaps.
    """
    if isinstance(stats, EnsembleStats):
        fp, _ = solve_fixed_point(params, p0)
        return abs(stats.mean_p - fp)
    gaps = [compare_meanfield(s, pr, p0) for s, pr in zip(stats, params, strict=True)]
    return float(np.linalg.norm(gaps))


def sweep_liabilities(pop: BalanceSheetParams, network: NetworkConfig,
                      config: CascadeConfig, mu_l_values: Sequence[float],
                      trials: int, seed: int,
                      workers: int | None = None) -> list[EnsembleStats]:
    """Ensembles across mean-liability values with trial-matched randomness."""
    return [
        monte_carlo(replace(pop, mu_liabilities=float(mu_l)), network, config,
                    trials, seed, workers)
        for mu_l in mu_l_values
    ]
