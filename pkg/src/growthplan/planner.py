"""Backward planning: from a target output-growth rate to input schedules.

Given a fitted production model, a base-year observation, and a strategy for
how much of the target comes from productivity versus input accumulation,
generate the year-by-year output, TFP, and input levels that reach the
target. The split always uses the exact multiplicative identity

    (1 + g_TFP) * (1 + g_input)^sum(e) = 1 + g_Y

never the additive approximation, so schedules land on the target without
over-growing inputs. Levels compound in closed form from the base year;
rounding of discrete inputs (people, trucks) is display-only and never feeds
back into the compounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .accounting import TFP_SOURCE, GrowthRates
from .errors import (
    HorizonExhausted,
    InfeasibleMix,
    InvalidArgument,
    MismatchedInputs,
    PeriodMismatch,
)
from .estimation import ObservationRow, ProductionModel, TimeSeriesDataset, back_out_tfp
from .targets import (
    EXPLICIT_RATE,
    GrowthTarget,
    annual_rate_for,
    solve_rate_numeric,
)

INPUTS_ONLY = "inputs_only"
TFP_ONLY = "tfp_only"
MIXED = "mixed"

STRATEGY_MODES = (INPUTS_ONLY, TFP_ONLY, MIXED)


@dataclass(frozen=True)
class StrategyMix:
    """How target growth is sourced: inputs only, productivity only, or both.

    For the mixed mode ``tfp_growth`` is the planned annual productivity
    growth; the inputs-only mode forces it to zero and the productivity-only
    mode derives it from the target at planning time.
    """

    mode: str = MIXED
    tfp_growth: float = 0.0

    def __post_init__(self):
        if self.mode not in STRATEGY_MODES:
            raise InvalidArgument(f"unknown strategy mode {self.mode!r}", modes=STRATEGY_MODES)
        if self.mode == INPUTS_ONLY and self.tfp_growth != 0.0:
            raise InvalidArgument("inputs-only strategy cannot carry TFP growth")
        if self.tfp_growth < 0.0:
            raise InvalidArgument("planned TFP growth cannot be negative")

    @classmethod
    def inputs_only(cls) -> "StrategyMix":
        return cls(mode=INPUTS_ONLY)

    @classmethod
    def tfp_only(cls) -> "StrategyMix":
        return cls(mode=TFP_ONLY)

    @classmethod
    def mixed(cls, tfp_growth: float) -> "StrategyMix":
        return cls(mode=MIXED, tfp_growth=tfp_growth)

    def tfp_rate_for(self, target_gy: float) -> float:
        if self.mode == INPUTS_ONLY:
            return 0.0
        if self.mode == TFP_ONLY:
            return target_gy
        return self.tfp_growth


@dataclass(frozen=True)
class PlanRow:
    """Required levels for one plan year.

    ``input_levels`` are the authoritative continuous values;
    ``input_levels_display`` rounds discrete inputs half-up for presentation.
    ``growth_applied`` is the step into this year (None for the base row).
    """

    year: int
    output: float
    tfp: float
    input_levels: Mapping[str, float]
    input_levels_display: Mapping[str, float]
    growth_applied: GrowthRates | None

    def display_level(self, input_id: str) -> float:
        return self.input_levels_display.get(input_id, self.input_levels[input_id])


@dataclass(frozen=True)
class GrowthPlan:
    """A full backward-planned schedule from base year to horizon."""

    model: ProductionModel
    target: GrowthTarget
    strategy: StrategyMix
    annual_output_growth: float
    common_input_growth: float
    rows: tuple[PlanRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    @property
    def base(self) -> PlanRow:
        return self.rows[0]

    @property
    def terminal(self) -> PlanRow:
        return self.rows[-1]

    @property
    def horizon_years(self) -> int:
        return self.terminal.year - self.base.year

    def row_for_year(self, year: int) -> PlanRow:
        for row in self.rows:
            if row.year == year:
                return row
        raise PeriodMismatch(f"plan has no year {year}", year=year)


@dataclass(frozen=True)
class PlanEvaluation:
    """Realized-vs-planned comparison for one year.

    ``remaining_required_rate`` is the annual rate from the realized output
    to the plan's terminal output over the remaining years; ``None`` when no
    planning years remain.
    """

    year: int
    planned: PlanRow
    realized: ObservationRow
    output_gap: float
    input_gaps: Mapping[str, float]
    remaining_required_rate: float | None


def round_half_up(value: float) -> float:
    """Round a positive quantity half-up to a whole unit (4.5 -> 5).

    Snaps to 9 decimals first so that compounding noise just below a .5
    boundary (e.g. 6083.499999999999 for an exact 6083.5) rounds the way the
    exact value would.
    """
    return float(math.floor(round(value, 9) + 0.5))


def split_growth(
    target_gy: float,
    strategy: StrategyMix,
    elasticity_sum: float,
    allow_contraction: bool = False,
) -> float:
    """Common input growth that exactly composes with TFP growth to the target.

    Solves ``(1 + g_TFP) * (1 + g)^elasticity_sum = 1 + target_gy`` for g.
    When productivity growth alone overshoots the target the solution is
    negative (inputs would shrink); that is rejected unless the caller
    explicitly allows contraction.
    """
    if not target_gy > -1.0:
        raise InvalidArgument(f"target growth must exceed -1, got {target_gy}")
    if not elasticity_sum > 0:
        raise InvalidArgument(f"elasticity sum must be positive, got {elasticity_sum}")
    g_tfp = strategy.tfp_rate_for(target_gy)
    ratio = (1.0 + target_gy) / (1.0 + g_tfp)
    g = ratio ** (1.0 / elasticity_sum) - 1.0
    if g < 0.0 and not allow_contraction:
        raise InfeasibleMix(
            f"TFP growth {g_tfp} alone exceeds the {target_gy} target; "
            "input contraction is disallowed",
            target=target_gy, tfp_growth=g_tfp,
        )
    return g


def _residual_common_growth(
    target_gy: float,
    g_tfp: float,
    elasticities: Mapping[str, float],
    fixed: Mapping[str, float],
    allow_contraction: bool,
) -> float:
    """Common rate for the non-fixed inputs, solved numerically.

    With some input growth rates pinned by the caller, the free inputs share
    one rate g with ``(1+g_TFP) * prod_fixed (1+g_i)^e_i * (1+g)^s = 1+g_Y``
    where s is the free inputs' elasticity mass.
    """
    free_mass = sum(e for key, e in elasticities.items() if key not in fixed)
    fixed_factor = 1.0
    for key, rate in fixed.items():
        if key not in elasticities:
            raise MismatchedInputs(f"fixed growth for unknown input {key!r}", input=key)
        if not rate > -1.0:
            raise InvalidArgument(f"fixed growth for {key!r} must exceed -1", input=key)
        fixed_factor *= (1.0 + rate) ** elasticities[key]

    needed = (1.0 + target_gy) / ((1.0 + g_tfp) * fixed_factor)
    if free_mass == 0.0:
        if abs(needed - 1.0) > 1e-9:
            raise InfeasibleMix(
                "all input growth is fixed but does not compose to the target",
                residual_factor=needed,
            )
        return 0.0

    def gap(g: float) -> float:
        return (1.0 + g) ** free_mass - needed

    hi = max(1.0, needed)
    while gap(hi) < 0:
        hi = 2.0 * hi + 1.0
    g = solve_rate_numeric(gap, (-1.0 + 1e-12, hi))
    if g < 0.0 and not allow_contraction:
        raise InfeasibleMix(
            "fixed input growth leaves a negative residual rate for the rest",
            residual_rate=g,
        )
    return g


def generate_schedule(
    model: ProductionModel,
    base: ObservationRow,
    annual_gy: float,
    strategy: StrategyMix,
    years: int,
    target: GrowthTarget | None = None,
    discrete_inputs: Iterable[str] = (),
    fixed_input_growth: Mapping[str, float] | None = None,
    allow_contraction: bool = False,
    start_year: int = 0,
) -> GrowthPlan:
    """Build the year-by-year schedule that compounds to the target rate.

    Every level compounds in closed form from the base row, so the terminal
    output is exact and year-stepping drift cannot accumulate. The base TFP
    is backed out of the base observation, which keeps every row on the
    production surface. ``fixed_input_growth`` pins chosen inputs at their
    own rates and solves a residual common rate for the rest; the default is
    fully proportional growth.
    """
    if years < 0:
        raise InvalidArgument(f"years must be nonnegative, got {years}")
    if not annual_gy > -1.0:
        raise InvalidArgument(f"annual growth must exceed -1, got {annual_gy}")
    ids = list(model.elasticities)
    missing = [i for i in ids if i not in base.input_levels]
    if missing:
        raise MismatchedInputs("base row lacks levels for model inputs", missing=missing)

    elasticity_sum = model.elasticity_sum()
    g_tfp = strategy.tfp_rate_for(annual_gy)
    fixed = dict(fixed_input_growth or {})
    if fixed:
        common = _residual_common_growth(annual_gy, g_tfp, model.elasticities, fixed, allow_contraction)
    else:
        common = split_growth(annual_gy, strategy, elasticity_sum, allow_contraction)
    rates = {i: fixed.get(i, common) for i in ids}

    discrete = [i for i in discrete_inputs if i in ids]
    base_tfp = back_out_tfp(base, model.elasticities)
    step = GrowthRates(output_growth=annual_gy, input_growth=rates, tfp_growth=g_tfp)

    rows = []
    for y in range(years + 1):
        levels = {i: base.input_levels[i] * (1.0 + rates[i]) ** y for i in ids}
        rows.append(PlanRow(
            year=start_year + y,
            output=base.output_level * (1.0 + annual_gy) ** y,
            tfp=base_tfp * (1.0 + g_tfp) ** y,
            input_levels=levels,
            input_levels_display={i: round_half_up(levels[i]) for i in discrete},
            growth_applied=None if y == 0 else step,
        ))

    if target is None:
        target = GrowthTarget(kind=EXPLICIT_RATE, rate=annual_gy, horizon_years=years or None)
    return GrowthPlan(
        model=model,
        target=target,
        strategy=strategy,
        annual_output_growth=annual_gy,
        common_input_growth=common,
        rows=rows,
    )


def build_plan(
    model: ProductionModel,
    base: ObservationRow,
    target: GrowthTarget,
    strategy: StrategyMix,
    horizon_years: int,
    discrete_inputs: Iterable[str] = (),
    fixed_input_growth: Mapping[str, float] | None = None,
    allow_contraction: bool = False,
) -> GrowthPlan:
    """Resolve a target to an annual rate and generate its schedule."""
    if horizon_years < 1:
        raise InvalidArgument(f"planning horizon must be at least 1 year, got {horizon_years}")
    rate = annual_rate_for(target, default_horizon=horizon_years)
    return generate_schedule(
        model, base, rate, strategy, horizon_years,
        target=target,
        discrete_inputs=discrete_inputs,
        fixed_input_growth=fixed_input_growth,
        allow_contraction=allow_contraction,
    )


@dataclass(frozen=True)
class PlanDecomposition:
    """Per-year sources of a plan's output growth.

    ``contributions`` uses the additive identity (e_i times the input's
    planned rate, plus planned TFP growth); their sum is the approximate
    annual rate. ``exact_output_growth`` composes the same rates
    multiplicatively and equals the plan's annual rate.
    """

    contributions: Mapping[str, float]
    approximate_output_growth: float
    exact_output_growth: float
    shares_of_total: Mapping[str, float] | None


def decompose_plan(plan: GrowthPlan) -> PlanDecomposition:
    """Attribute the plan's annual growth to inputs and productivity."""
    if len(plan.rows) < 2:
        zero = {key: 0.0 for key in plan.model.elasticities}
        zero[TFP_SOURCE] = 0.0
        return PlanDecomposition(zero, 0.0, 0.0, None)

    step = plan.rows[1].growth_applied
    contributions = {
        key: e * step.input_growth[key] for key, e in plan.model.elasticities.items()
    }
    contributions[TFP_SOURCE] = step.tfp_growth
    approx = sum(contributions.values())

    exact = (1.0 + step.tfp_growth)
    for key, e in plan.model.elasticities.items():
        exact *= (1.0 + step.input_growth[key]) ** e
    exact -= 1.0

    shares = {key: v / approx for key, v in contributions.items()} if approx != 0 else None
    return PlanDecomposition(contributions, approx, exact, shares)


def expansion_path_check(plan: GrowthPlan, tolerance: float = 1e-9) -> bool:
    """True when input ratios stay constant over the plan (straight-line path).

    Proportional accumulation keeps every pair of input levels in a fixed
    ratio; pinning one input to its own growth rate breaks this.
    """
    base_levels = plan.base.input_levels
    for row in plan.rows:
        ratios = [row.input_levels[i] / base_levels[i] for i in base_levels]
        low, high = min(ratios), max(ratios)
        if high - low > tolerance * max(abs(high), 1.0):
            return False
    return True


def evaluate_plan(plan: GrowthPlan, realized: TimeSeriesDataset) -> list[PlanEvaluation]:
    """Compare realized observations against the plan, year by year.

    Realized periods must parse as plan years. Each evaluation carries the
    annual rate still required from the realized output to the plan's
    terminal output over the remaining years.
    """
    evaluations = []
    for row in realized.observations:
        evaluations.append(_evaluate_row(plan, row))
    return evaluations


def _evaluate_row(plan: GrowthPlan, realized: ObservationRow) -> PlanEvaluation:
    try:
        year = int(realized.period)
    except (TypeError, ValueError):
        raise PeriodMismatch(
            f"realized period {realized.period!r} is not a plan year",
            period=realized.period,
        )
    planned = plan.row_for_year(year)
    missing = [i for i in planned.input_levels if i not in realized.input_levels]
    if missing:
        raise MismatchedInputs("realized row lacks levels for plan inputs", missing=missing)

    output_gap = (realized.output_level - planned.output) / planned.output
    input_gaps = {
        i: (realized.input_levels[i] - planned.input_levels[i]) / planned.input_levels[i]
        for i in planned.input_levels
    }
    remaining = plan.terminal.year - year
    if remaining > 0:
        rate = (plan.terminal.output / realized.output_level) ** (1.0 / remaining) - 1.0
    else:
        rate = None
    return PlanEvaluation(
        year=year,
        planned=planned,
        realized=realized,
        output_gap=output_gap,
        input_gaps=input_gaps,
        remaining_required_rate=rate,
    )


def replan(plan: GrowthPlan, from_year: int, realized_row: ObservationRow) -> GrowthPlan:
    """Reschedule from a realized year so the original terminal output holds.

    Keeps the strategy mix; only the annual rate (and hence the input rates)
    is re-solved over the remaining years. Raises when no years remain and
    the target was missed.
    """
    years = [r.year for r in plan.rows]
    if from_year not in years:
        raise PeriodMismatch(f"year {from_year} is outside the plan horizon", year=from_year)
    remaining = plan.terminal.year - from_year
    base = replace(realized_row, period=from_year)
    discrete = list(plan.base.input_levels_display)

    if remaining == 0:
        if realized_row.output_level < plan.terminal.output * (1.0 - 1e-9):
            raise HorizonExhausted(
                "target output missed with no planning years remaining",
                planned=plan.terminal.output, realized=realized_row.output_level,
            )
        levels = dict(base.input_levels)
        row = PlanRow(
            year=from_year,
            output=base.output_level,
            tfp=back_out_tfp(base, plan.model.elasticities),
            input_levels=levels,
            input_levels_display={i: round_half_up(levels[i]) for i in discrete},
            growth_applied=None,
        )
        return GrowthPlan(
            model=plan.model, target=plan.target, strategy=plan.strategy,
            annual_output_growth=0.0, common_input_growth=0.0, rows=(row,),
        )

    new_rate = (plan.terminal.output / realized_row.output_level) ** (1.0 / remaining) - 1.0
    return generate_schedule(
        plan.model, base, new_rate, plan.strategy, remaining,
        target=plan.target, discrete_inputs=discrete, start_year=from_year,
    )
