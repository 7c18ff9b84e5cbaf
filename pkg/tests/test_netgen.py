import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from contagion.distributions import substream
from contagion.netgen import (
    CORE_PERIPHERY_DENSE,
    NetworkConfig,
    assign_loans,
    complete,
    core_periphery,
    erdos_renyi,
    read_edge_list,
    watts_strogatz,
    write_edge_list,
)


def rng_for(*ids):
    return substream(20240, *ids)


# ------------------------------------------------------------- Erdos-Renyi


def test_er_degenerate_probabilities():
    empty = erdos_renyi(5, 0.0, rng_for("er", 0))
    assert empty.edge_count == 0
    full = erdos_renyi(5, 1.0, rng_for("er", 1))
    assert full.edge_count == 20
    assert not np.any(np.diagonal(full.adjacency))


def test_er_mean_out_degree():
    degrees = []
    for seed in range(100):
        net = erdos_renyi(500, 0.1, rng_for("er-mean", seed))
        degrees.append(net.out_degrees.mean())
    assert abs(float(np.mean(degrees)) - 0.1 * 499) < 0.5


def test_er_out_degree_distribution_chi_square():
    m, alpha = 200, 0.1
    samples = np.concatenate([
        erdos_renyi(m, alpha, rng_for("er-chi", seed)).out_degrees
        for seed in range(100)
    ])
    binomial = sps.binom(m - 1, alpha)
    # pool the tails so every bin keeps a healthy expected count
    lo, hi = int(binomial.ppf(0.001)), int(binomial.ppf(0.999))
    edges = np.arange(lo, hi + 1)
    observed = np.array(
        [np.sum(samples <= lo)]
        + [np.sum(samples == k) for k in range(lo + 1, hi)]
        + [np.sum(samples >= hi)])
    expected = np.array(
        [binomial.cdf(lo)]
        + [binomial.pmf(k) for k in range(lo + 1, hi)]
        + [1.0 - binomial.cdf(hi - 1)]) * samples.size
    chi = sps.chisquare(observed, expected)
    assert chi.pvalue > 0.001


def test_er_seed_determinism():
    a = erdos_renyi(64, 0.2, rng_for("det", 5))
    b = erdos_renyi(64, 0.2, rng_for("det", 5))
    assert np.array_equal(a.adjacency, b.adjacency)


# ------------------------------------------------------------ Watts-Strogatz


def test_ws_pure_ring():
    net = watts_strogatz(10, 4, 0.0, rng_for("ws", 0))
    assert np.all(net.out_degrees == 4)
    # ring neighbours at offsets +-1, +-2
    for i in range(10):
        for k in (1, 2):
            assert net.adjacency[i, (i + k) % 10]
            assert net.adjacency[i, (i - k) % 10]


def test_ws_edge_count_conserved_under_rewiring():
    net = watts_strogatz(500, 4, 0.1, rng_for("ws", 1))
    assert net.edge_count == 2 * 1000  # 500*4/2 undirected, mutual directed
    assert np.array_equal(net.adjacency, net.adjacency.T)


def test_ws_rejects_bad_neighbourhood():
    with pytest.raises(ValueError):
        watts_strogatz(10, 3, 0.1, rng_for("ws", 2))
    with pytest.raises(ValueError):
        watts_strogatz(10, 10, 0.1, rng_for("ws", 3))


def _avg_clustering(adjacency: np.ndarray) -> float:
    # undirected local clustering averaged over nodes with degree >= 2
    a = adjacency.astype(float)
    deg = a.sum(axis=1)
    triangles = np.diagonal(a @ a @ a) / 2.0
    mask = deg >= 2
    possible = deg[mask] * (deg[mask] - 1) / 2.0
    return float(np.mean(triangles[mask] / possible))


def test_ws_clustering_limits():
    c = 12
    ring = watts_strogatz(400, c, 0.0, rng_for("ws-clust", 0))
    analytic = 3.0 * (c - 2) / (4.0 * (c - 1))
    assert _avg_clustering(ring.adjacency) == pytest.approx(analytic, abs=1e-12)
    shuffled = watts_strogatz(400, c, 1.0, rng_for("ws-clust", 1))
    assert _avg_clustering(shuffled.adjacency) < 0.1 * analytic


def test_ws_network_example_from_defaults():
    net = watts_strogatz(500, 12, 0.1, rng_for("ws-fig", 0))
    assert net.edge_count == 2 * (500 * 12 // 2)


# ------------------------------------------------------------ core-periphery


def test_cp_counts_and_out_degrees():
    net = core_periphery(50, 0.75, 450, 15, rng_for("cp", 0))
    assert net.n_banks == 500
    periphery = net.out_degrees[50:]
    # every periphery bank placed exactly 15 links; later arrivals can attach
    # to it afterwards, so 15 is a floor attained by the last bank added
    assert np.all(periphery >= 15)
    assert periphery[-1] == 15
    undirected = net.edge_count // 2
    seed_edges = int(net.adjacency[:50, :50].sum()) // 2
    assert undirected == seed_edges + 450 * 15


def test_cp_smallest_case():
    net = core_periphery(2, 1.0, 1, 1, rng_for("cp", 1))
    assert net.n_banks == 3
    assert net.adjacency[0, 1] and net.adjacency[1, 0]
    assert net.edge_count == 4  # seed pair plus one mutual attachment


def test_cp_rejects_oversized_attachment():
    with pytest.raises(ValueError):
        core_periphery(10, 0.5, 5, 11, rng_for("cp", 2))


def test_cp_seed_nodes_dominate_periphery():
    seed_medians, periph_medians = [], []
    for seed in range(100):
        net = core_periphery(50, 0.75, 450, 15, rng_for("cp-deg", seed))
        seed_medians.append(np.median(net.out_degrees[:50]))
        periph_medians.append(np.median(net.out_degrees[50:]))
    assert np.median(seed_medians) > np.median(periph_medians)


def test_cp_table_preset_builds():
    net = NetworkConfig("core_periphery", n_core=50, alpha_core=0.1,
                        m_links=15).build(500, rng_for("cp", 3))
    assert net.n_banks == 500
    dense = CORE_PERIPHERY_DENSE.build(500, rng_for("cp", 4))
    # the dense preset wires three quarters of core pairs
    core_density = dense.adjacency[:50, :50].sum() / (50 * 49)
    assert 0.6 < core_density < 0.9


# ------------------------------------------------------------------ complete


def test_complete_graphs():
    assert complete(3).edge_count == 6
    assert complete(1).edge_count == 0
    assert np.all(complete(7).out_degrees == 6)


# --------------------------------------------------------------- loan splits


def test_assign_loans_zero_theta():
    net = erdos_renyi(20, 0.3, rng_for("loans", 0))
    weighted = assign_loans(net, 0.0, np.full(20, 1000.0))
    assert np.all(weighted.weights == 0.0)


def test_assign_loans_equal_split():
    adj = np.zeros((5, 5), dtype=bool)
    adj[0, 1:] = True
    from contagion.netgen import ExposureNetwork

    net = ExposureNetwork(5, adj, np.zeros((5, 5)))
    assets = np.array([1000.0, 10.0, 10.0, 10.0, 10.0])
    weighted = assign_loans(net, 0.3, assets)
    assert np.allclose(weighted.weights[0, 1:], 75.0)
    assert weighted.weights[1:].sum() == 0.0


@settings(max_examples=30)
@given(seed=st.integers(0, 10_000), theta=st.floats(0.0, 1.0), alpha=st.floats(0.0, 1.0))
def test_assign_loans_conserves_totals(seed, theta, alpha):
    rng = substream(seed, "loan-prop")
    m = 30
    net = erdos_renyi(m, alpha, rng)
    assets = np.asarray(rng.uniform(10.0, 2000.0, size=m))
    weighted = assign_loans(net, theta, assets)
    connected = net.out_degrees > 0
    assert weighted.weights.sum() == pytest.approx(
        theta * assets[connected].sum(), rel=1e-12, abs=1e-9)
    row_sums = weighted.weights.sum(axis=1)
    assert np.allclose(row_sums[connected], theta * assets[connected], rtol=1e-12)
    assert np.all(row_sums[~connected] == 0.0)


# ------------------------------------------------------------------- file IO


def test_edge_list_round_trip(tmp_path):
    net = assign_loans(erdos_renyi(25, 0.2, rng_for("io", 0)), 0.25,
                       np.asarray(rng_for("io", 1).uniform(500, 1500, 25)))
    path = tmp_path / "net.csv"
    write_edge_list(net, path, {"seed": 123, "generator": "erdos_renyi"})
    loaded = read_edge_list(path)
    assert loaded.n_banks == net.n_banks
    assert np.array_equal(loaded.adjacency, net.adjacency)
    assert np.allclose(loaded.weights, net.weights, rtol=1e-10)
    sidecar = (tmp_path / "net.json").read_text()
    assert '"M": 25' in sidecar and '"generator": "erdos_renyi"' in sidecar
