"""Command-line front door for the full planning workflow.

Subcommands map to the workflow phases: ``estimate`` fits the production
function, ``decompose`` runs forward accounting over a dataset, ``target``
solves objectives into rates or horizons, ``plan`` builds a backward
schedule from a config file, ``evaluate`` compares realized data against a
plan, and ``serve`` starts the HTTP scenario service.

Output is JSON by default (``--format csv`` for table-shaped reports).
Exit codes: 0 success, 1 domain error (structured JSON on stderr), 2 usage
error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from pathlib import Path

from . import io_formats, planner, targets
from .accounting import decompose, growth_between
from .errors import GrowthPlanError, InvalidArgument
from .estimation import fit_cobb_douglas
from .io_formats import dumps_canonical


@dataclass
class CliResult:
    stdout: str
    stderr: str
    exit_code: int


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthplan",
        description="Growth accounting and backward planning of business growth",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_estimate = sub.add_parser("estimate", help="fit the production function from a dataset CSV")
    p_estimate.add_argument("--data", required=True, help="dataset CSV path")
    p_estimate.add_argument("--crts", action="store_true", help="impose constant returns to scale")
    p_estimate.add_argument("--format", choices=("json", "csv"), default="json")

    p_decompose = sub.add_parser("decompose", help="decompose observed growth, period by period")
    p_decompose.add_argument("--data", required=True, help="dataset CSV path")
    source = p_decompose.add_mutually_exclusive_group(required=True)
    source.add_argument("--model", help="model JSON path supplying the elasticities")
    source.add_argument("--crts", action="store_true", help="estimate elasticities from the data under CRTS")
    p_decompose.add_argument("--format", choices=("json", "csv"), default="json")

    p_target = sub.add_parser("target", help="solve a growth objective")
    target_sub = p_target.add_subparsers(dest="target_kind", required=True)

    p_multiple = target_sub.add_parser("multiple", help="years to reach a multiple at a rate")
    p_multiple.add_argument("--m", type=float, required=True, dest="multiple")
    p_multiple.add_argument("--rate", type=float, required=True, help="annual rate as a fraction")

    p_catchup = target_sub.add_parser("catchup", help="catch a leader: solve horizon or rate")
    p_catchup.add_argument("--follower", type=float, required=True, help="follower's current level")
    p_catchup.add_argument("--leader", type=float, required=True, help="leader's current level")
    p_catchup.add_argument("--leader-rate", type=float, required=True, dest="leader_rate")
    mode = p_catchup.add_mutually_exclusive_group(required=True)
    mode.add_argument("--follower-rate", type=float, dest="follower_rate",
                      help="assumed follower rate; solves the horizon")
    mode.add_argument("--horizon", type=float, help="years allowed; solves the required rate")

    p_plan = sub.add_parser("plan", help="build a backward schedule from a config file")
    p_plan.add_argument("--config", required=True, help="plan config JSON path")
    p_plan.add_argument("--out", help="directory for plan.json, plan.csv, charts.json")
    p_plan.add_argument("--format", choices=("json", "csv"), default="json")

    p_evaluate = sub.add_parser("evaluate", help="compare realized data against a plan")
    p_evaluate.add_argument("--plan", required=True, help="plan JSON path")
    p_evaluate.add_argument("--realized", required=True, help="realized dataset CSV path")
    p_evaluate.add_argument("--format", choices=("json", "csv"), default="json")

    p_serve = sub.add_parser("serve", help="run the HTTP scenario service")
    p_serve.add_argument("--port", type=int, default=8750)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--store", default="./bga-store",
                         help="store directory (the BGA_STORE env var overrides this)")

    return parser


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc.strerror or exc}", path=path)


def _cmd_estimate(args) -> str:
    dataset = io_formats.read_dataset(_read_text(args.data))
    model = fit_cobb_douglas(dataset, impose_crts=args.crts)
    if args.format == "csv":
        lines = ["parameter,value", f"tfp,{io_formats.format_number(model.tfp_level)}"]
        for key, e in model.elasticities.items():
            lines.append(f"{key},{io_formats.format_number(e)}")
        lines.append(f"residual_variance,{io_formats.format_number(model.fit_residual_variance)}")
        return "\n".join(lines) + "\n"
    return dumps_canonical(io_formats.model_to_dict(model))


def _cmd_decompose(args) -> str:
    dataset = io_formats.read_dataset(_read_text(args.data))
    if args.model:
        model = io_formats.model_from_dict(json.loads(_read_text(args.model)))
    else:
        model = fit_cobb_douglas(dataset, impose_crts=True)

    steps = []
    observations = dataset.observations
    for prev, nxt in zip(observations, observations[1:]):
        rates = growth_between(prev, nxt)
        result = decompose(rates, model.elasticities)
        steps.append((prev.period, nxt.period, result))

    if args.format == "csv":
        lines = ["from,to,source,contribution,share_of_total"]
        for start, end, result in steps:
            for source, contribution in result.contributions.items():
                share = ("" if result.shares_of_total is None
                         else io_formats.format_number(result.shares_of_total[source]))
                lines.append(f"{start},{end},{source},{io_formats.format_number(contribution)},{share}")
        return "\n".join(lines) + "\n"
    return dumps_canonical({
        "steps": [
            {"from": str(start), "to": str(end), **io_formats.decomposition_to_dict(result)}
            for start, end, result in steps
        ]
    })


def _cmd_target(args) -> str:
    if args.target_kind == "multiple":
        out = {
            "kind": "multiple",
            "multiple": args.multiple,
            "rate": args.rate,
            "years": targets.years_to_multiple_exact(args.multiple, args.rate),
        }
        if args.multiple == 2.0 and args.rate > 0:
            out["rule70_years"] = targets.years_to_multiple_rule70(args.rate * 100.0)
        return dumps_canonical(out)

    problem = targets.CatchupProblem(
        follower_level=args.follower,
        leader_level=args.leader,
        leader_rate=args.leader_rate,
        follower_rate=args.follower_rate,
    )
    if args.horizon is not None:
        return dumps_canonical({
            "kind": "catchup",
            "horizon_years": args.horizon,
            "required_rate": targets.required_rate(problem, args.horizon),
        })
    return dumps_canonical({
        "kind": "catchup",
        "follower_rate": args.follower_rate,
        "horizon_years": targets.catchup_horizon(problem),
    })


def load_plan_from_config(config_path: str) -> planner.GrowthPlan:
    """Read a config file and build its plan; dataset paths resolve relative
    to the config file's directory."""
    config = io_formats.read_plan_config(_read_text(config_path))
    dataset_path = Path(config.dataset_path)
    if not dataset_path.is_absolute():
        dataset_path = Path(config_path).resolve().parent / dataset_path
    dataset = io_formats.read_dataset(_read_text(str(dataset_path)),
                                      discrete_inputs=config.discrete_inputs)
    if config.estimate:
        model = fit_cobb_douglas(dataset, impose_crts=config.estimate_crts)
    else:
        model = config.model
    return planner.build_plan(
        model=model,
        base=dataset.observations[-1],
        target=config.target,
        strategy=config.strategy,
        horizon_years=config.horizon_years,
        discrete_inputs=config.discrete_inputs,
        fixed_input_growth=config.fixed_input_growth,
        allow_contraction=config.allow_contraction,
    )


def _cmd_plan(args) -> str:
    plan = load_plan_from_config(args.config)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        reports = io_formats.write_plan_reports(plan)
        (out_dir / "plan.json").write_text(reports["json"], encoding="utf-8")
        (out_dir / "plan.csv").write_text(reports["csv"], encoding="utf-8")
        charts = dumps_canonical(io_formats.charts_to_list(reports["charts"]))
        (out_dir / "charts.json").write_text(charts, encoding="utf-8")
    if args.format == "csv":
        return io_formats.write_plan_csv(plan)
    return io_formats.write_plan_json(plan)


def _cmd_evaluate(args) -> str:
    plan = io_formats.read_plan_json(_read_text(args.plan))
    realized = io_formats.read_dataset(_read_text(args.realized))
    evaluations = planner.evaluate_plan(plan, realized)
    if args.format == "csv":
        lines = ["year,output_gap,remaining_required_rate"]
        for ev in evaluations:
            rate = "" if ev.remaining_required_rate is None else io_formats.format_number(ev.remaining_required_rate)
            lines.append(f"{ev.year},{io_formats.format_number(ev.output_gap)},{rate}")
        return "\n".join(lines) + "\n"
    return dumps_canonical({
        "evaluations": [io_formats.evaluation_to_dict(ev) for ev in evaluations]
    })


def _cmd_serve(args) -> str:
    import uvicorn

    from .service import build_app

    store_dir = os.environ.get("BGA_STORE") or args.store
    app = build_app(store_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return ""


_COMMANDS = {
    "estimate": _cmd_estimate,
    "decompose": _cmd_decompose,
    "target": _cmd_target,
    "plan": _cmd_plan,
    "evaluate": _cmd_evaluate,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    """Console entry point; prints to the real stdout/stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        sys.stdout.write(_COMMANDS[args.command](args))
        return 0
    except GrowthPlanError as exc:
        sys.stderr.write(dumps_canonical({"error": exc.to_dict()}))
        return 1


def run(argv: list[str], stdin_text: str = "") -> CliResult:
    """In-process invocation with captured streams, for scripting and tests."""
    out, err = io.StringIO(), io.StringIO()
    original_stdin = sys.stdin
    sys.stdin = io.StringIO(stdin_text)
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
    finally:
        sys.stdin = original_stdin
    return CliResult(stdout=out.getvalue(), stderr=err.getvalue(), exit_code=code)


if __name__ == "__main__":
    sys.exit(main())
