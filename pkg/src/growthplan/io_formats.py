"""Dataset, model, plan, and report serialization.

Dataset CSV: header ``period,<input_id>...,output``, one row per period,
decimal point, no grouping. Plan CSV mirrors the planning tables:
``year,Y,gY%,TFP,gTFP%,<input>,<input>_g%...`` with percentages to two
decimals. All JSON is emitted through one canonical writer (numbers at up to
15 significant digits, stable key order) so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .accounting import Decomposition, GrowthRates
from .errors import InvalidArgument, NonPositiveLevel, ParseError
from .estimation import (
    InputDefinition,
    ObservationRow,
    ProductionModel,
    TimeSeriesDataset,
)
from .planner import (
    GrowthPlan,
    PlanDecomposition,
    PlanEvaluation,
    PlanRow,
    StrategyMix,
    decompose_plan,
)
from .targets import CatchupProblem, GrowthTarget


# ---------------------------------------------------------------------------
# Canonical JSON
# ---------------------------------------------------------------------------

def format_number(value: float) -> str:
    """Locale-independent numeric literal at up to 15 significant digits."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidArgument(f"not a number: {value!r}")
    if isinstance(value, int):
        return str(value)
    if not math.isfinite(value):
        raise InvalidArgument(f"non-finite number cannot be serialized: {value!r}")
    return format(value, ".15g")


def dumps_canonical(obj: Any, indent: int = 2) -> str:
    """Serialize to JSON with canonical number formatting.

    Key order is preserved as built (all emitters build dicts in a fixed
    order), so output is deterministic byte-for-byte.
    """
    out = io.StringIO()
    _write_json(out, obj, indent, 0)
    out.write("\n")
    return out.getvalue()


def _write_json(out: io.StringIO, obj: Any, indent: int, depth: int) -> None:
    pad = " " * (indent * (depth + 1))
    close_pad = " " * (indent * depth)
    if obj is None:
        out.write("null")
    elif isinstance(obj, bool):
        out.write("true" if obj else "false")
    elif isinstance(obj, (int, float)):
        out.write(format_number(obj))
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, Mapping):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.write(pad)
            out.write(json.dumps(str(key)))
            out.write(": ")
            _write_json(out, value, indent, depth + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(close_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.write("[]")
            return
        out.write("[\n")
        for i, value in enumerate(obj):
            out.write(pad)
            _write_json(out, value, indent, depth + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(close_pad + "]")
    else:
        raise InvalidArgument(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Dataset CSV
# ---------------------------------------------------------------------------

def read_dataset(csv_text: str, discrete_inputs: Sequence[str] = ()) -> TimeSeriesDataset:
    """Parse a dataset CSV into observations over its declared inputs."""
    reader = csv.reader(io.StringIO(csv_text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("dataset CSV is empty")
    header = [cell.strip() for cell in rows[0]]
    if len(header) < 3 or header[0] != "period" or header[-1] != "output":
        raise ParseError(
            "dataset header must be 'period,<input_id>...,output'", header=header,
        )
    input_ids = header[1:-1]
    if len(set(input_ids)) != len(input_ids):
        raise ParseError("duplicate input ids in header", header=header)

    discrete = set(discrete_inputs)
    observations = []
    for line_no, row in enumerate(rows[1:], start=2):
        cells = [cell.strip() for cell in row]
        if len(cells) != len(header):
            raise ParseError(
                f"row {line_no} has {len(cells)} cells, expected {len(header)}",
                row=line_no,
            )
        period = cells[0]
        levels = {}
        for column, (input_id, cell) in enumerate(zip(input_ids, cells[1:-1]), start=2):
            levels[input_id] = _parse_level(cell, line_no, column, input_id)
        output = _parse_level(cells[-1], line_no, len(header), "output")
        observations.append(ObservationRow(period=period, input_levels=levels, output_level=output))

    inputs = tuple(
        InputDefinition(id=input_id, discrete=input_id in discrete) for input_id in input_ids
    )
    return TimeSeriesDataset(inputs=inputs, observations=tuple(observations))


def _parse_level(cell: str, row: int, column: int, name: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(
            f"row {row}, column {column}: {cell!r} is not a number",
            row=row, column=column, field=name,
        )
    if not math.isfinite(value) or value <= 0:
        raise NonPositiveLevel(
            f"row {row}, column {column}: {name} level must be positive, got {cell}",
            row=row, column=column, field=name,
        )
    return value


def write_dataset(data: TimeSeriesDataset) -> str:
    """Emit the dataset CSV; a parse/emit round trip is lossless."""
    lines = ["period," + ",".join(data.input_ids) + ",output"]
    for row in data.observations:
        cells = [str(row.period)]
        cells += [format_number(row.input_levels[i]) for i in data.input_ids]
        cells.append(format_number(row.output_level))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Model JSON
# ---------------------------------------------------------------------------

def model_to_dict(model: ProductionModel) -> dict:
    out = {
        "tfp": model.tfp_level,
        "elasticities": dict(model.elasticities),
        "crts_imposed": model.crts_imposed,
        "residual_variance": model.fit_residual_variance,
    }
    if model.warnings:
        out["warnings"] = list(model.warnings)
    return out


def model_from_dict(data: Mapping[str, Any]) -> ProductionModel:
    try:
        return ProductionModel(
            tfp_level=float(data["tfp"]),
            elasticities={str(k): float(v) for k, v in data["elasticities"].items()},
            crts_imposed=bool(data.get("crts_imposed", False)),
            fit_residual_variance=float(data.get("residual_variance", 0.0)),
            warnings=tuple(data.get("warnings", ())),
        )
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"malformed model record: {exc}")


# ---------------------------------------------------------------------------
# Target / strategy JSON
# ---------------------------------------------------------------------------

def target_to_dict(target: GrowthTarget) -> dict:
    out: dict[str, Any] = {"kind": target.kind}
    if target.multiple is not None:
        out["multiple"] = target.multiple
    if target.rival is not None:
        rival = {
            "follower_level": target.rival.follower_level,
            "leader_level": target.rival.leader_level,
            "leader_rate": target.rival.leader_rate,
        }
        if target.rival.follower_rate is not None:
            rival["follower_rate"] = target.rival.follower_rate
        out["rival"] = rival
    if target.horizon_years is not None:
        out["horizon_years"] = target.horizon_years
    if target.rate is not None:
        out["rate"] = target.rate
    return out


def target_from_dict(data: Mapping[str, Any]) -> GrowthTarget:
    try:
        rival = None
        if data.get("rival") is not None:
            r = data["rival"]
            rival = CatchupProblem(
                follower_level=float(r["follower_level"]),
                leader_level=float(r["leader_level"]),
                leader_rate=float(r["leader_rate"]),
                follower_rate=None if r.get("follower_rate") is None else float(r["follower_rate"]),
            )
        return GrowthTarget(
            kind=str(data["kind"]),
            multiple=None if data.get("multiple") is None else float(data["multiple"]),
            rival=rival,
            horizon_years=None if data.get("horizon_years") is None else float(data["horizon_years"]),
            rate=None if data.get("rate") is None else float(data["rate"]),
        )
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"malformed target record: {exc}")


def strategy_to_dict(strategy: StrategyMix) -> dict:
    return {"mode": strategy.mode, "tfp_growth": strategy.tfp_growth}


def strategy_from_dict(data: Mapping[str, Any]) -> StrategyMix:
    try:
        return StrategyMix(
            mode=str(data["mode"]),
            tfp_growth=float(data.get("tfp_growth", 0.0)),
        )
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"malformed strategy record: {exc}")


# ---------------------------------------------------------------------------
# Plan JSON / CSV
# ---------------------------------------------------------------------------

def _rates_to_dict(rates: GrowthRates) -> dict:
    return {
        "output_growth": rates.output_growth,
        "input_growth": dict(rates.input_growth),
        "tfp_growth": rates.tfp_growth,
    }


def _rates_from_dict(data: Mapping[str, Any]) -> GrowthRates:
    return GrowthRates(
        output_growth=float(data["output_growth"]),
        input_growth={str(k): float(v) for k, v in data["input_growth"].items()},
        tfp_growth=None if data.get("tfp_growth") is None else float(data["tfp_growth"]),
    )


def plan_to_dict(plan: GrowthPlan) -> dict:
    return {
        "model": model_to_dict(plan.model),
        "target": target_to_dict(plan.target),
        "strategy": strategy_to_dict(plan.strategy),
        "annual_output_growth": plan.annual_output_growth,
        "common_input_growth": plan.common_input_growth,
        # Derived, embedded so consumers (charts, the UI) never re-multiply
        # weights and rates themselves; ignored when reading a plan back.
        "decomposition": plan_decomposition_to_dict(decompose_plan(plan)),
        "rows": [
            {
                "year": row.year,
                "output": row.output,
                "tfp": row.tfp,
                "input_levels": dict(row.input_levels),
                "input_levels_display": dict(row.input_levels_display),
                "growth_applied": None if row.growth_applied is None else _rates_to_dict(row.growth_applied),
            }
            for row in plan.rows
        ],
    }


def plan_from_dict(data: Mapping[str, Any]) -> GrowthPlan:
    try:
        rows = tuple(
            PlanRow(
                year=int(r["year"]),
                output=float(r["output"]),
                tfp=float(r["tfp"]),
                input_levels={str(k): float(v) for k, v in r["input_levels"].items()},
                input_levels_display={str(k): float(v) for k, v in r["input_levels_display"].items()},
                growth_applied=None if r.get("growth_applied") is None else _rates_from_dict(r["growth_applied"]),
            )
            for r in data["rows"]
        )
        return GrowthPlan(
            model=model_from_dict(data["model"]),
            target=target_from_dict(data["target"]),
            strategy=strategy_from_dict(data["strategy"]),
            annual_output_growth=float(data["annual_output_growth"]),
            common_input_growth=float(data["common_input_growth"]),
            rows=rows,
        )
    except ParseError:
        raise
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"malformed plan record: {exc}")


def write_plan_json(plan: GrowthPlan) -> str:
    return dumps_canonical(plan_to_dict(plan))


def read_plan_json(text: str) -> GrowthPlan:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"plan JSON does not parse: {exc}")
    return plan_from_dict(data)


def _percent_cell(rate: float | None) -> str:
    return "" if rate is None else f"{rate * 100:.2f}"


def write_plan_csv(plan: GrowthPlan) -> str:
    """Table-shaped report: one row per year, levels plus step percentages.

    Discrete inputs show their rounded display value; growth cells are blank
    on the base row.
    """
    ids = list(plan.model.elasticities)
    header = ["year", "Y", "gY%", "TFP", "gTFP%"]
    for input_id in ids:
        header += [input_id, f"{input_id}_g%"]
    lines = [",".join(header)]
    for row in plan.rows:
        step = row.growth_applied
        cells = [
            str(row.year),
            format_number(row.output),
            _percent_cell(None if step is None else step.output_growth),
            format_number(row.tfp),
            _percent_cell(None if step is None else step.tfp_growth),
        ]
        for input_id in ids:
            cells.append(format_number(row.display_level(input_id)))
            cells.append(_percent_cell(None if step is None else step.input_growth[input_id]))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Chart series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChartSeries:
    """A labelled (year, value) series ready for plotting."""

    label: str
    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        years = [year for year, _ in self.points]
        if any(b <= a for a, b in zip(years, years[1:])):
            raise InvalidArgument("chart years must be strictly increasing", label=self.label)


def chart_series_for_plan(plan: GrowthPlan) -> list[ChartSeries]:
    """Output trajectory, per-source contribution stack, per-input paths."""
    series = [ChartSeries(
        label="output",
        points=tuple((row.year, row.output) for row in plan.rows),
    )]
    breakdown = decompose_plan(plan)
    plan_years = tuple(row.year for row in plan.rows[1:])
    for source, contribution in breakdown.contributions.items():
        series.append(ChartSeries(
            label=f"contribution:{source}",
            points=tuple((year, contribution) for year in plan_years),
        ))
    for input_id in plan.model.elasticities:
        series.append(ChartSeries(
            label=f"input:{input_id}",
            points=tuple((row.year, row.input_levels[input_id]) for row in plan.rows),
        ))
    return series


def charts_to_list(series: Sequence[ChartSeries]) -> list[dict]:
    return [
        {"label": s.label, "points": [[year, value] for year, value in s.points]}
        for s in series
    ]


def write_plan_reports(plan: GrowthPlan) -> dict:
    """All plan artifacts at once: ``{"csv", "json", "charts"}``."""
    return {
        "csv": write_plan_csv(plan),
        "json": write_plan_json(plan),
        "charts": chart_series_for_plan(plan),
    }


# ---------------------------------------------------------------------------
# Decomposition reports
# ---------------------------------------------------------------------------

def decomposition_to_dict(result: Decomposition) -> dict:
    return {
        "g_y": result.output_growth,
        "contributions": dict(result.contributions),
        "shares": None if result.shares_of_total is None else dict(result.shares_of_total),
        "residual": result.residual,
    }


def plan_decomposition_to_dict(result: PlanDecomposition) -> dict:
    return {
        "contributions": dict(result.contributions),
        "approximate_output_growth": result.approximate_output_growth,
        "exact_output_growth": result.exact_output_growth,
        "shares": None if result.shares_of_total is None else dict(result.shares_of_total),
    }


def decomposition_to_csv(result: Decomposition) -> str:
    """One row per growth source: contribution and share of the total."""
    lines = ["source,contribution,share_of_total"]
    for source, contribution in result.contributions.items():
        share = "" if result.shares_of_total is None else format_number(result.shares_of_total[source])
        lines.append(f"{source},{format_number(contribution)},{share}")
    return "\n".join(lines) + "\n"


def evaluation_to_dict(evaluation: PlanEvaluation) -> dict:
    return {
        "year": evaluation.year,
        "planned": {
            "output": evaluation.planned.output,
            "tfp": evaluation.planned.tfp,
            "input_levels": dict(evaluation.planned.input_levels),
        },
        "realized": {
            "period": str(evaluation.realized.period),
            "input_levels": dict(evaluation.realized.input_levels),
            "output_level": evaluation.realized.output_level,
        },
        "output_gap": evaluation.output_gap,
        "input_gaps": dict(evaluation.input_gaps),
        "remaining_required_rate": evaluation.remaining_required_rate,
    }


# ---------------------------------------------------------------------------
# Plan configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlanConfig:
    """Everything needed to build a plan from files.

    Exactly one of ``model`` (inline parameters) or ``estimate`` (fit from
    the dataset, optionally under CRTS) must be given.
    """

    dataset_path: str
    target: GrowthTarget
    strategy: StrategyMix
    horizon_years: int
    model: ProductionModel | None = None
    estimate: bool = False
    estimate_crts: bool = False
    discrete_inputs: tuple[str, ...] = ()
    allow_contraction: bool = False
    fixed_input_growth: Mapping[str, float] | None = None

    def __post_init__(self):
        if (self.model is None) == (not self.estimate):
            raise ParseError("config needs exactly one of an inline model or an estimate directive")
        if self.horizon_years < 1:
            raise ParseError(f"horizon must be at least 1 year, got {self.horizon_years}")


def read_plan_config(text: str) -> PlanConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config JSON does not parse: {exc}")
    if not isinstance(data, dict):
        raise ParseError("config must be a JSON object")
    try:
        model_spec = data.get("model")
        model = None
        estimate = False
        estimate_crts = False
        if isinstance(model_spec, Mapping) and "estimate" in model_spec:
            estimate = bool(model_spec["estimate"])
            estimate_crts = bool(model_spec.get("crts", False))
        elif model_spec is not None:
            model = model_from_dict(model_spec)
        fixed = data.get("fixed_input_growth")
        return PlanConfig(
            dataset_path=str(data["dataset_path"]),
            target=target_from_dict(data["target"]),
            strategy=strategy_from_dict(data["strategy"]),
            horizon_years=int(data["horizon_years"]),
            model=model,
            estimate=estimate,
            estimate_crts=estimate_crts,
            discrete_inputs=tuple(str(i) for i in data.get("discrete_inputs", ())),
            allow_contraction=bool(data.get("allow_contraction", False)),
            fixed_input_growth=None if fixed is None else {str(k): float(v) for k, v in fixed.items()},
        )
    except ParseError:
        raise
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        raise ParseError(f"malformed plan config: {exc}")
