"""Exposure-network generators and loan assignment.

A directed edge i -> j means bank i lends to bank j (an asset of i, a
liability of j). The lattice, small-world and preferential-attachment
constructions build undirected structure first and then materialize every
link as a mutual pair of directed edges, each direction weighted from its
own lender's balance sheet.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class ExposureNetwork:
    """Directed lending graph over ``n_banks`` banks.

    ``adjacency[i, j]`` is True when i lends to j; ``weights`` carries the
    per-edge loan amounts (all zero until :func:`assign_loans`). Arrays are
    frozen so generated networks can be shared across threads.
    """

    n_banks: int
    adjacency: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        m = self.n_banks
        if self.adjacency.shape != (m, m) or self.weights.shape != (m, m):
            raise ValueError("adjacency and weights must be (M, M)")
        if np.any(np.diagonal(self.adjacency)):
            raise ValueError("self-loops are not allowed")
        self.adjacency.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def out_degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum())


def _from_adjacency(adj: np.ndarray) -> ExposureNetwork:
    m = adj.shape[0]
    return ExposureNetwork(m, adj, np.zeros((m, m)))


def erdos_renyi(m: int, alpha: float, rng: np.random.Generator) -> ExposureNetwork:
    """Each ordered pair (i, j), i != j, gets an edge with probability alpha."""
    if m < 1:
        raise ValueError("need at least one bank")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    adj = rng.random((m, m)) < alpha
    np.fill_diagonal(adj, False)
    return _from_adjacency(adj)


def watts_strogatz(m: int, c: int, beta: float, rng: np.random.Generator) -> ExposureNetwork:
    """Ring lattice with c nearest neighbours, each link rewired with prob beta.

    Rewiring keeps the undirected edge count at m*c/2: a rewired link moves
    to a uniformly random target that is neither the source nor already a
    neighbour (kept in place when no such target exists). The undirected
    structure is then mirrored into mutual directed edges.
    """
    if c % 2 != 0 or c < 0:
        raise ValueError(f"c must be a nonnegative even count, got {c}")
    if c >= m:
        raise ValueError(f"c must be smaller than the number of banks ({c} >= {m})")
    sym = np.zeros((m, m), dtype=bool)
    for k in range(1, c // 2 + 1):
        for i in range(m):
            j = (i + k) % m
            sym[i, j] = sym[j, i] = True
    for k in range(1, c // 2 + 1):
        for i in range(m):
            j = (i + k) % m
            if not sym[i, j]:
                continue  # already rewired away by an earlier pass
            if rng.random() >= beta:
                continue
            candidates = np.flatnonzero(~sym[i])
            candidates = candidates[candidates != i]
            if candidates.size == 0:
                continue
            t = int(candidates[rng.integers(candidates.size)])
            sym[i, j] = sym[j, i] = False
            sym[i, t] = sym[t, i] = True
    return _from_adjacency(sym)


def _degree_proportional_targets(rng: np.random.Generator, degrees: np.ndarray,
                                 n_links: int) -> np.ndarray:
    """Sample ``n_links`` distinct targets with probability proportional to degree.

    Uses exponent keys (u ** (1/w)), the standard weighted-sampling-without-
    replacement trick; zero-degree nodes are only used to top up when there
    are not enough positive-degree candidates.
    """
    n = degrees.size
    n_links = min(n_links, n)
    if n_links == 0:
        return np.empty(0, dtype=int)
    positive = np.flatnonzero(degrees > 0)
    if positive.size == 0:
        return rng.choice(n, size=n_links, replace=False)
    u = rng.random(n)
    keys = np.where(degrees > 0, u ** (1.0 / np.maximum(degrees, 1e-300)), -1.0)
    if positive.size >= n_links:
        return np.argpartition(-keys, n_links - 1)[:n_links]
    zero = np.flatnonzero(degrees == 0)
    extra = rng.choice(zero, size=n_links - positive.size, replace=False)
    return np.concatenate([positive, extra])


def core_periphery(m_core: int, alpha_core: float, m_periph: int, m_links: int,
                   rng: np.random.Generator) -> ExposureNetwork:
    """Dense (or sparse) core plus periphery attached by preferential attachment.

    The core is an undirected random graph on ``m_core`` banks with pair
    probability ``alpha_core``; each of the ``m_periph`` new banks then links
    to ``m_links`` distinct existing banks chosen proportionally to current
    degree. All undirected links become mutual directed edges.
    """
    if m_links > m_core:
        raise ValueError(f"m_links ({m_links}) cannot exceed the core size ({m_core})")
    if not 0.0 <= alpha_core <= 1.0:
        raise ValueError(f"alpha_core must lie in [0, 1], got {alpha_core}")
    m = m_core + m_periph
    sym = np.zeros((m, m), dtype=bool)
    draws = rng.random((m_core, m_core))
    seed_mask = np.triu(draws < alpha_core, k=1)
    sym[:m_core, :m_core] = seed_mask | seed_mask.T
    degrees = sym.sum(axis=1).astype(float)
    for new in range(m_core, m):
        targets = _degree_proportional_targets(rng, degrees[:new], m_links)
        sym[new, targets] = True
        sym[targets, new] = True
        degrees[targets] += 1.0
        degrees[new] = len(targets)
    return _from_adjacency(sym)


def complete(m: int) -> ExposureNetwork:
    """Every ordered pair connected; the mean-field comparison topology."""
    if m < 1:
        raise ValueError("need at least one bank")
    adj = np.ones((m, m), dtype=bool)
    np.fill_diagonal(adj, False)
    return _from_adjacency(adj)


def assign_loans(net: ExposureNetwork, theta: float, assets0: np.ndarray) -> ExposureNetwork:
    """Split theta * assets equally over each bank's outgoing edges.

    Every outgoing edge of bank i carries theta * assets0[i] / out_degree(i),
    so the row sum reproduces the bank's interbank assets exactly. Banks with
    no borrowers lend nothing; their theta share simply stays in
    non-interbank assets. Nonpositive sampled assets are passed through
    unchanged (heavy-tailed draws are kept as-is by the simulator).
    """
    assets0 = np.asarray(assets0, dtype=float)
    if assets0.shape != (net.n_banks,):
        raise ValueError("assets0 must have one entry per bank")
    if not np.all(np.isfinite(assets0)):
        raise ValueError("initial assets must be finite")
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    z = net.out_degrees
    per_edge = theta * assets0 / np.maximum(z, 1)
    weights = net.adjacency * per_edge[:, None]
    return ExposureNetwork(net.n_banks, net.adjacency.copy(), weights)


@dataclass(frozen=True)
class NetworkConfig:
    """Serializable recipe for building an exposure network.

    ``kind`` is one of erdos_renyi, watts_strogatz, core_periphery, complete.
    Only the fields relevant to the chosen kind are read.
    """

    kind: str
    alpha: float = 0.1
    c: int = 4
    beta: float = 0.1
    n_core: int = 50
    alpha_core: float = 0.1
    m_links: int = 15

    def build(self, m: int, rng: np.random.Generator) -> ExposureNetwork:
        if self.kind == "erdos_renyi":
            return erdos_renyi(m, self.alpha, rng)
        if self.kind == "watts_strogatz":
            return watts_strogatz(m, self.c, self.beta, rng)
        if self.kind == "core_periphery":
            if m < self.n_core:
                raise ValueError("total banks smaller than the core")
            return core_periphery(self.n_core, self.alpha_core, m - self.n_core,
                                  self.m_links, rng)
        if self.kind == "complete":
            return complete(m)
        raise ValueError(f"unknown network kind {self.kind!r}")


# Core-periphery presets: a sparse seed matching the default parameter table,
# and the densely connected core used for the network-robustness runs.
CORE_PERIPHERY_SPARSE = NetworkConfig("core_periphery", n_core=50, alpha_core=0.1, m_links=15)
CORE_PERIPHERY_DENSE = NetworkConfig("core_periphery", n_core=50, alpha_core=0.75, m_links=15)


def write_edge_list(net: ExposureNetwork, csv_path, meta: dict | None = None) -> None:
    """Export as ``src,dst,weight`` rows plus a JSON sidecar with the node count."""
    csv_path = Path(csv_path)
    src, dst = np.nonzero(net.adjacency)
    with open(csv_path, "w", newline="\n", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst", "weight"])
        for i, j in zip(src.tolist(), dst.tolist()):
            writer.writerow([i, j, format(net.weights[i, j], ".12g")])
    sidecar = {"M": net.n_banks}
    if meta:
        sidecar.update(meta)
    csv_path.with_suffix(".json").write_text(
        json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")


def read_edge_list(csv_path, sidecar_path=None) -> ExposureNetwork:
    csv_path = Path(csv_path)
    sidecar_path = Path(sidecar_path) if sidecar_path else csv_path.with_suffix(".json")
    meta = json.loads(sidecar_path.read_text(encoding="utf-8"))
    m = int(meta["M"])
    adj = np.zeros((m, m), dtype=bool)
    weights = np.zeros((m, m))
    with open(csv_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["src", "dst", "weight"]:
            raise ValueError(f"unexpected edge-list header: {reader.fieldnames}")
        for row in reader:
            i, j = int(row["src"]), int(row["dst"])
            adj[i, j] = True
            weights[i, j] = float(row["weight"])
    return ExposureNetwork(m, adj, weights)
