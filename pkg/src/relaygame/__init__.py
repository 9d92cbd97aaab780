"""Adaptive m-QAM rate control over a network-coded two-way relay.

Two users exchange data through an amplify-and-forward relay and each picks
a modulation order (2^a-QAM, a = 0 meaning silence) to trade bit errors
against the time its partner spends waiting.  The induced two-player cost
game is supermodular, so extremal pure Nash equilibria exist and iterated
joint best responses find them.  This package solves those equilibria on
quantized SNR grids, checks the structural properties that make the scheme
work, and benchmarks the equilibrium schedulers against single-agent
adaptive modulation and fixed-rate transmission in Monte Carlo sweeps.
"""

from .analysis import (
    MARGIN_TOLERANCE,
    PropertyName,
    PropertyReport,
    check_error_cost_submodularity,
    check_monotonicity,
    check_pareto,
    check_submodularity,
    check_symmetry,
    export_policy_surface,
)
from .channel import (
    ChannelParams,
    FadingDraw,
    average_snr_calibration,
    calibrate_with_grid,
    db_to_ratio,
    draw_fading,
    effective_snr,
    quantize_to_grid,
    ratio_to_db,
)
from .config import ConfigError, RunConfig, load_config, parse_config
from .core import (
    Action,
    ActionProfile,
    CostModel,
    ErrorVariant,
    Policy,
    SnrGrid,
    SnrVector,
    cost_error,
    cost_total,
    error_cost_table,
    lattice_join,
    lattice_meet,
    single_agent_best,
    submodularity_margin,
)
from .simulate import (
    SimulationReport,
    StrategyKind,
    StrategySpec,
    run_simulation,
    run_sweep,
)
from .solver import (
    AccelStats,
    BestResponseTrace,
    ExtremalEquilibria,
    SolveDirection,
    best_response_max,
    best_response_min,
    cournot_solve,
    enumerate_psne,
    online_learning_step,
    solve_accelerated,
    solve_extremal,
)
from .tables import format_value, read_csv, write_csv

__version__ = "0.1.0"

__all__ = [
    "Action",
    "ActionProfile",
    "SnrVector",
    "SnrGrid",
    "ErrorVariant",
    "CostModel",
    "Policy",
    "cost_error",
    "cost_total",
    "single_agent_best",
    "submodularity_margin",
    "lattice_join",
    "lattice_meet",
    "error_cost_table",
    "SolveDirection",
    "BestResponseTrace",
    "ExtremalEquilibria",
    "AccelStats",
    "best_response_max",
    "best_response_min",
    "cournot_solve",
    "enumerate_psne",
    "online_learning_step",
    "solve_extremal",
    "solve_accelerated",
    "ChannelParams",
    "FadingDraw",
    "db_to_ratio",
    "ratio_to_db",
    "effective_snr",
    "draw_fading",
    "quantize_to_grid",
    "average_snr_calibration",
    "calibrate_with_grid",
    "StrategyKind",
    "StrategySpec",
    "SimulationReport",
    "run_simulation",
    "run_sweep",
    "PropertyName",
    "PropertyReport",
    "check_submodularity",
    "check_pareto",
    "check_symmetry",
    "check_monotonicity",
    "check_error_cost_submodularity",
    "export_policy_surface",
    "MARGIN_TOLERANCE",
    "ConfigError",
    "RunConfig",
    "load_config",
    "parse_config",
    "format_value",
    "write_csv",
    "read_csv",
    "__version__",
]
