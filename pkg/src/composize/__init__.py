"""Sizing two-arm superiority trials on a composite of two binary endpoints."""

from ._version import __version__
from .bounds import (
    CorrelationBounds,
    CorrelationCategory,
    RateIntervals,
    RobustBounds,
    bounds,
    category_interval,
    design_rho,
    robust_bounds,
)
from .composite import (
    ArmRates,
    CorrelationPair,
    JointTable,
    MarginalSpec,
    OddsRatio,
    RiskDifference,
    RiskRatio,
    composite_effect,
    composite_rate,
    joint_table,
    treatment_rates,
)
from .design import (
    DesignSpec,
    Recommendation,
    SampleSizeResult,
    n_composite,
    power,
    recommend,
    rho_curve,
    sample_size_interval,
    ss_from_composite,
)
from .errors import (
    CompositeError,
    DomainError,
    InfeasibleCorrelation,
    InvalidEffect,
    InvalidRate,
    NullEffect,
)
from .simulate import (
    ArmOutcome,
    GridConfig,
    Scenario,
    SimulationSummary,
    empirical_rate,
    feasible_cells,
    run_grid,
    sample_arm,
    test_statistic,
    write_csv,
)

__all__ = [
    "__version__",
    "ArmOutcome",
    "ArmRates",
    "CompositeError",
    "CorrelationBounds",
    "CorrelationCategory",
    "CorrelationPair",
    "DesignSpec",
    "DomainError",
    "GridConfig",
    "InfeasibleCorrelation",
    "InvalidEffect",
    "InvalidRate",
    "JointTable",
    "MarginalSpec",
    "NullEffect",
    "OddsRatio",
    "RateIntervals",
    "Recommendation",
    "RiskDifference",
    "RiskRatio",
    "RobustBounds",
    "SampleSizeResult",
    "Scenario",
    "SimulationSummary",
    "bounds",
    "category_interval",
    "composite_effect",
    "composite_rate",
    "design_rho",
    "empirical_rate",
    "feasible_cells",
    "joint_table",
    "n_composite",
    "power",
    "recommend",
    "rho_curve",
    "robust_bounds",
    "run_grid",
    "sample_arm",
    "sample_size_interval",
    "ss_from_composite",
    "test_statistic",
    "treatment_rates",
    "write_csv",
]
