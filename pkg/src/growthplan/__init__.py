"""Growth accounting and backward planning of business growth.

Fit a multiplicative production function from input-output data, decompose
realized output growth into input accumulation and productivity, and run the
same accounting backward: from a target growth rate to the year-by-year
input and productivity schedules that achieve it.
"""

from .accounting import (
    TFP_SOURCE,
    Decomposition,
    GrowthRates,
    absolute_contributions,
    approximation_gap,
    decompose,
    exact_compose,
    growth_between,
    solow_residual,
)
from .errors import GrowthPlanError
from .estimation import (
    CRTS,
    DRTS,
    IRTS,
    InputDefinition,
    ObservationRow,
    ProductionModel,
    RtsClass,
    TimeSeriesDataset,
    back_out_tfp,
    classify_rts,
    fit_cobb_douglas,
)
from .planner import (
    INPUTS_ONLY,
    MIXED,
    TFP_ONLY,
    GrowthPlan,
    PlanDecomposition,
    PlanEvaluation,
    PlanRow,
    StrategyMix,
    build_plan,
    decompose_plan,
    evaluate_plan,
    expansion_path_check,
    generate_schedule,
    replan,
    split_growth,
)
from .targets import (
    CATCH_UP,
    EXPLICIT_RATE,
    MULTIPLE,
    CatchupProblem,
    GrowthTarget,
    annual_rate_for,
    catchup_horizon,
    future_value,
    implied_horizon,
    required_rate,
    required_rate_numeric,
    solve_rate_numeric,
    years_to_multiple_exact,
    years_to_multiple_rule70,
)

__version__ = "0.1.0"

__all__ = [
    "CATCH_UP",
    "CRTS",
    "DRTS",
    "EXPLICIT_RATE",
    "INPUTS_ONLY",
    "IRTS",
    "MIXED",
    "MULTIPLE",
    "TFP_ONLY",
    "TFP_SOURCE",
    "CatchupProblem",
    "Decomposition",
    "GrowthPlan",
    "GrowthPlanError",
    "GrowthRates",
    "GrowthTarget",
    "InputDefinition",
    "ObservationRow",
    "PlanDecomposition",
    "PlanEvaluation",
    "PlanRow",
    "ProductionModel",
    "RtsClass",
    "StrategyMix",
    "TimeSeriesDataset",
    "absolute_contributions",
    "annual_rate_for",
    "approximation_gap",
    "back_out_tfp",
    "build_plan",
    "catchup_horizon",
    "classify_rts",
    "decompose",
    "decompose_plan",
    "evaluate_plan",
    "exact_compose",
    "expansion_path_check",
    "fit_cobb_douglas",
    "future_value",
    "generate_schedule",
    "growth_between",
    "implied_horizon",
    "replan",
    "required_rate",
    "required_rate_numeric",
    "solow_residual",
    "solve_rate_numeric",
    "split_growth",
    "years_to_multiple_exact",
    "years_to_multiple_rule70",
]
