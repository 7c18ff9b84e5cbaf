import io
import math
from pathlib import Path

import numpy as np
import pytest

from contagion.calibration import (
    BalanceSheetError,
    load_balance_sheets,
    stability_scan,
    summarize,
    trajectory_overlay,
)
from contagion.distributions import NORMAL
from contagion.meanfield import critical_coupling, phase_diagram

DATA = Path(__file__).resolve().parent.parent / "data"

# Reference aggregates the bundled fixtures encode: (mu_A, std_A, mu_E, std_E,
# printed leverage, bank count).
PINS = {
    ("UK", 2007): (2.0287e11, 4.7503e11, 6.3032e9, 1.3785e10, 0.0311, 26),
    ("UK", 2012): (1.8307e11, 4.2912e11, 8.1836e9, 2.0298e10, 0.0447, 38),
    ("US", 2007): (1.8505e10, 1.3592e11, 1.0615e9, 6.6785e9, 0.0574, 666),
    ("US", 2012): (2.0247e10, 1.5234e11, 1.5829e9, 1.1102e10, 0.0782, 779),
}


def fixture_records(country):
    return load_balance_sheets(DATA / f"{country.lower()}_balance_sheets.csv")


def fixture_summary(country, year):
    return summarize(fixture_records(country), country, year)


# --------------------------------------------------------------------- load


def test_load_valid_rows():
    text = (
        "bank_id,country,year,total_assets,tier1_capital\n"
        "a,UK,2007,100.0,5.0\n"
        "b,UK,2007,200.0,10.0\n"
        "c,US,2012,300.0,15.0\n"
    )
    records = load_balance_sheets(io.StringIO(text))
    assert len(records) == 3
    assert all(r.included for r in records)


def test_load_flags_nonpositive_tier1():
    text = (
        "bank_id,country,year,total_assets,tier1_capital\n"
        "a,UK,2007,100.0,0.0\n"
        "b,UK,2007,200.0,\n"
        "c,UK,2007,300.0,9.0\n"
    )
    records = load_balance_sheets(io.StringIO(text))
    assert [r.included for r in records] == [False, False, True]


def test_load_errors_name_the_line():
    text = (
        "bank_id,country,year,total_assets,tier1_capital\n"
        "a,UK,2007,100.0,5.0\n"
        "b,UK,2007,not-a-number,5.0\n"
    )
    with pytest.raises(BalanceSheetError, match="line 3"):
        load_balance_sheets(io.StringIO(text))
    with pytest.raises(BalanceSheetError, match="empty"):
        load_balance_sheets(io.StringIO(""))
    with pytest.raises(BalanceSheetError, match="header"):
        load_balance_sheets(io.StringIO("bank,assets\nx,1\n"))


def test_load_accepts_bytes():
    text = "bank_id,country,year,total_assets,tier1_capital\na,UK,2007,1.0,0.5\n"
    assert len(load_balance_sheets(text.encode())) == 1


# ---------------------------------------------------------------- summarize


@pytest.mark.parametrize("country,year", list(PINS))
def test_summaries_reproduce_reference_aggregates(country, year):
    mu_a, std_a, mu_e, std_e, gamma, n = PINS[(country, year)]
    s = fixture_summary(country, year)
    assert s.mu_A == pytest.approx(mu_a, rel=5e-5)
    assert s.std_A == pytest.approx(std_a, rel=5e-5)
    assert s.mu_E == pytest.approx(mu_e, rel=5e-5)
    assert s.std_E == pytest.approx(std_e, rel=5e-5)
    assert s.n_banks == n
    assert s.leverage == pytest.approx(s.mu_E / s.mu_A, rel=1e-15)
    # the printed leverage is the ratio rounded to the published precision
    assert float(f"{s.leverage:.3g}") == gamma


def test_summarize_single_record_flags_degenerate_std():
    text = "bank_id,country,year,total_assets,tier1_capital\na,UK,2007,100.0,5.0\n"
    s = summarize(load_balance_sheets(io.StringIO(text)), "UK", 2007)
    assert s.n_banks == 1
    assert s.std_A == 0.0 and s.std_E == 0.0
    assert s.std_degenerate


def test_summarize_empty_filter_raises():
    with pytest.raises(BalanceSheetError):
        summarize(fixture_records("UK"), "UK", 1999)


def test_summarize_skips_excluded_records():
    text = (
        "bank_id,country,year,total_assets,tier1_capital\n"
        "a,UK,2007,100.0,5.0\n"
        "b,UK,2007,900.0,0.0\n"
    )
    s = summarize(load_balance_sheets(io.StringIO(text)), "UK", 2007)
    assert s.n_banks == 1
    assert s.mu_A == 100.0


# ------------------------------------------------------------------- scans


def test_scan_identity_holds_in_every_cell():
    s = fixture_summary("UK", 2007)
    scan = stability_scan(s, [0.0, 0.07, 0.3], np.linspace(0.05, 1.0, 20), NORMAL)
    for i in range(scan.theta.size):
        for j in range(scan.f.size):
            assert scan.a[i, j] - scan.b[i, j] == pytest.approx(
                -1.0 / scan.f[j], rel=1e-12)


def test_scan_zero_theta_column_is_pure_noise():
    for country, year in PINS:
        s = fixture_summary(country, year)
        scan = stability_scan(s, [0.0], [0.25, 0.5, 1.0], NORMAL)
        for j, f in enumerate([0.25, 0.5, 1.0]):
            expected = 1.0 - 0.5 * math.erfc((1.0 / f) / math.sqrt(2.0))
            assert scan.p[0, j] == pytest.approx(expected, abs=1e-9)
        # even at the largest shock the uncoupled system keeps most banks
        assert scan.p[0, -1] == pytest.approx(0.8413, abs=1e-3)
        assert scan.p[0, -1] >= 0.84


def test_scan_rejects_bad_inputs():
    s = fixture_summary("UK", 2007)
    with pytest.raises(ValueError):
        stability_scan(s, [0.07], [0.0, 0.5], NORMAL)
    with pytest.raises(ValueError):
        stability_scan(s, [1.5], [0.5], NORMAL)


def test_overlay_b_decreases_with_f():
    s = fixture_summary("UK", 2012)
    pts = trajectory_overlay(s, 0.10, np.linspace(0.1, 1.0, 10), NORMAL)
    bs = [p.b for p in pts]
    assert np.all(np.diff(bs) < 0)


def test_overlay_leaves_bistable_region_at_large_f():
    s = fixture_summary("UK", 2012)
    (pt,) = trajectory_overlay(s, 0.10, [0.90], NORMAL)
    assert pt.b < critical_coupling(NORMAL)


def test_overlay_matches_phase_diagram_cells():
    s = fixture_summary("UK", 2012)
    for pt in trajectory_overlay(s, 0.10, [0.3, 0.6, 0.9], NORMAL):
        diag = phase_diagram([pt.a], [pt.b], 1.0, NORMAL)
        assert pt.p == pytest.approx(diag.p[0, 0], abs=1e-9)


def test_cross_year_stability_ordering():
    # the 2012 system is weakly more stable cell by cell
    uk07 = fixture_summary("UK", 2007)
    uk12 = fixture_summary("UK", 2012)
    thetas = [0.07, 0.10, 0.13, 0.3]
    f_grid = np.linspace(0.05, 1.0, 25)
    scan07 = stability_scan(uk07, thetas, f_grid, NORMAL)
    scan12 = stability_scan(uk12, thetas, f_grid, NORMAL)
    assert np.all(scan07.p <= scan12.p + 1e-9)


def test_theta_monotonicity_past_the_jump():
    # once every coupled curve has collapsed, more interbank exposure can
    # only lower the surviving fraction
    uk07 = fixture_summary("UK", 2007)
    thetas = [0.0, 0.03, 0.07, 0.10, 0.11, 0.13, 0.3, 0.4, 0.5]
    scan = stability_scan(uk07, thetas, [0.7, 0.8, 0.9, 1.0], NORMAL)
    for j in range(scan.f.size):
        assert np.all(np.diff(scan.p[:, j]) <= 1e-9)
