"""Stylized interbank-contagion toolkit.

Analytic fixed points of the survival map, Monte Carlo default cascades on
generated exposure networks, and balance-sheet calibration scans.
"""

from .distributions import (
    NORMAL,
    Family,
    LocationScaleDistribution,
    peak_density,
    sample,
    std_cdf,
    std_pdf,
    std_quantile,
    student_t,
    substream,
)
from .meanfield import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    FixedPointSolution,
    HysteresisResult,
    MeanFieldParams,
    NonConvergence,
    PhaseDiagram,
    Regime,
    Stability,
    branching_number,
    capital_relation,
    classify_fixed_points,
    collateral_transform,
    critical_coupling,
    hysteresis_bounds,
    hysteresis_sweep,
    iterate_map,
    leverage_min,
    phase_diagram,
    solve_fixed_point,
    tangency_offset,
)
from .netgen import (
    CORE_PERIPHERY_DENSE,
    CORE_PERIPHERY_SPARSE,
    ExposureNetwork,
    NetworkConfig,
    assign_loans,
    complete,
    core_periphery,
    erdos_renyi,
    read_edge_list,
    watts_strogatz,
    write_edge_list,
)
from .cascade import (
    BalanceSheetParams,
    BankPopulation,
    CascadeConfig,
    CascadeResult,
    EnsembleStats,
    Recovery,
    compare_meanfield,
    initialize_banks,
    meanfield_bridge,
    monte_carlo,
    run_cascade,
    sweep_liabilities,
)
from .calibration import (
    BalanceSheetError,
    BalanceSheetRecord,
    CalibrationSummary,
    OverlayPoint,
    StabilityScan,
    load_balance_sheets,
    stability_scan,
    summarize,
    trajectory_overlay,
)

__version__ = "0.1.0"
