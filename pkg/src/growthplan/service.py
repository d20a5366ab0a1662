"""HTTP scenario service: persist datasets and scenarios, plan on demand.

Records live as one canonical-JSON file each under the store directory,
written atomically (temp file + rename). Scenario mutation is serialized by
an in-process per-id lock plus optimistic version checks: mutating requests
may send ``If-Match: <version>`` and receive 409 when stale. What-if planning
is computed on merged parameters and never writes a byte.

All bodies are JSON; errors come back as ``{"error": {code, message,
detail}}`` with a stable code per domain error.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import io_formats, planner
from .errors import (
    GrowthPlanError,
    MissingPlan,
    NotFound,
    ParseError,
    PeriodMismatch,
    VersionConflict,
)
from .estimation import ObservationRow, fit_cobb_douglas

_STATUS_BY_CODE = {
    "ParseError": 400,
    "NonPositiveLevel": 400,
    "InvalidArgument": 422,
    "NotFound": 404,
    "VersionConflict": 409,
    "PeriodMismatch": 409,
    "MissingPlan": 409,
    "MismatchedInputs": 409,
    "InfeasibleMix": 422,
    "HorizonExhausted": 422,
}


class JsonFileStore:
    """File-backed record store: ``<root>/<kind>/<id>.json``, atomic writes."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._registry_lock = threading.Lock()
        self._record_locks: dict[tuple[str, str], threading.RLock] = {}

    def lock(self, kind: str, record_id: str) -> threading.RLock:
        with self._registry_lock:
            return self._record_locks.setdefault((kind, record_id), threading.RLock())

    def _path(self, kind: str, record_id: str) -> Path:
        return self.root / kind / f"{record_id}.json"

    def put(self, kind: str, record_id: str, payload: Mapping[str, Any]) -> None:
        record = {
            "kind": kind,
            "id": record_id,
            "payload": payload,
            "updated_at": datetime.now(timezone.utc).isoformat(),
        }
        path = self._path(kind, record_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = io_formats.dumps_canonical(record)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp_name, path)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise

    def get(self, kind: str, record_id: str) -> dict:
        path = self._path(kind, record_id)
        if not path.exists():
            raise NotFound(f"no {kind} with id {record_id!r}", kind=kind, id=record_id)
        return json.loads(path.read_text(encoding="utf-8"))["payload"]

    def content_hash(self) -> str:
        """Hash over every stored byte; unchanged iff no record was touched."""
        digest = hashlib.sha256()
        for path in sorted(self.root.rglob("*.json")):
            digest.update(str(path.relative_to(self.root)).encode())
            digest.update(path.read_bytes())
        return digest.hexdigest()


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


def _error_response(exc: GrowthPlanError) -> Response:
    status = _STATUS_BY_CODE.get(exc.code, 422)
    body = io_formats.dumps_canonical({"error": exc.to_dict()})
    return Response(content=body, status_code=status, media_type="application/json")


def _json_response(payload: Any, status_code: int = 200) -> Response:
    return Response(
        content=io_formats.dumps_canonical(payload),
        status_code=status_code,
        media_type="application/json",
    )


async def _body(request: Request) -> dict:
    try:
        data = json.loads(await request.body() or b"{}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"request body is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ParseError("request body must be a JSON object")
    return data


def _if_match(request: Request) -> int | None:
    header = request.headers.get("if-match")
    if header is None:
        return None
    try:
        return int(header.strip().strip('"'))
    except ValueError:
        raise VersionConflict(f"If-Match header {header!r} is not a version number")


def _check_version(scenario: Mapping[str, Any], expected: int | None) -> None:
    if expected is not None and expected != scenario["version"]:
        raise VersionConflict(
            f"scenario is at version {scenario['version']}, not {expected}",
            version=scenario["version"], expected=expected,
        )


def build_app(store_dir: str | os.PathLike) -> FastAPI:
    """Assemble the service around a store directory."""
    app = FastAPI(title="growthplan scenario service")
    # Loopback development tool without auth; the browser UI may be served
    # from a different local port.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = JsonFileStore(store_dir)
    app.state.store = store

    @app.exception_handler(GrowthPlanError)
    async def _domain_error(request: Request, exc: GrowthPlanError):
        return _error_response(exc)

    # -- datasets ----------------------------------------------------------

    @app.post("/datasets")
    async def create_dataset(request: Request):
        data = await _body(request)
        csv_text = data.get("csv")
        if not isinstance(csv_text, str):
            raise ParseError("body must carry the dataset under a 'csv' key")
        io_formats.read_dataset(csv_text)  # validate before persisting
        dataset_id = _new_id()
        store.put("dataset", dataset_id, {"csv": csv_text})
        return _json_response({"id": dataset_id}, status_code=201)

    @app.get("/datasets/{dataset_id}")
    async def get_dataset(dataset_id: str):
        payload = store.get("dataset", dataset_id)
        return _json_response({"id": dataset_id, "csv": payload["csv"]})

    # -- models ------------------------------------------------------------

    @app.post("/models/estimate")
    async def estimate_model(request: Request):
        data = await _body(request)
        dataset_id = data.get("dataset_id")
        if not isinstance(dataset_id, str):
            raise ParseError("body must carry a 'dataset_id'")
        dataset = io_formats.read_dataset(store.get("dataset", dataset_id)["csv"])
        model = fit_cobb_douglas(dataset, impose_crts=bool(data.get("crts", False)))
        return _json_response(io_formats.model_to_dict(model))

    # -- scenarios ---------------------------------------------------------

    def _load_scenario(scenario_id: str) -> dict:
        return store.get("scenario", scenario_id)

    def _scenario_plan(scenario: Mapping[str, Any],
                       overrides: Mapping[str, Any] | None = None) -> planner.GrowthPlan:
        merged = dict(scenario)
        if overrides:
            for key in ("target", "strategy", "horizon_years", "discrete_inputs"):
                if overrides.get(key) is not None:
                    merged[key] = overrides[key]
        dataset = io_formats.read_dataset(
            store.get("dataset", merged["dataset_ref"])["csv"],
            discrete_inputs=merged.get("discrete_inputs", ()),
        )
        return planner.build_plan(
            model=io_formats.model_from_dict(merged["model"]),
            base=dataset.observations[-1],
            target=io_formats.target_from_dict(merged["target"]),
            strategy=io_formats.strategy_from_dict(merged["strategy"]),
            horizon_years=int(merged["horizon_years"]),
            discrete_inputs=merged.get("discrete_inputs", ()),
        )

    @app.post("/scenarios")
    async def create_scenario(request: Request):
        data = await _body(request)
        dataset_ref = data.get("dataset_ref") or data.get("dataset_id")
        if not isinstance(dataset_ref, str):
            raise ParseError("body must carry a 'dataset_ref'")
        store.get("dataset", dataset_ref)  # must exist
        for key in ("model", "target", "strategy", "horizon_years"):
            if key not in data:
                raise ParseError(f"scenario is missing {key!r}")
        # Validate eagerly so malformed scenarios never persist.
        io_formats.model_from_dict(data["model"])
        io_formats.target_from_dict(data["target"])
        io_formats.strategy_from_dict(data["strategy"])
        scenario_id = _new_id()
        scenario = {
            "id": scenario_id,
            "dataset_ref": dataset_ref,
            "model": data["model"],
            "target": data["target"],
            "strategy": data["strategy"],
            "horizon_years": int(data["horizon_years"]),
            "discrete_inputs": list(data.get("discrete_inputs", ())),
            "latest_plan": None,
            "evaluations": [],
            "version": 1,
        }
        store.put("scenario", scenario_id, scenario)
        return _json_response(scenario, status_code=201)

    @app.get("/scenarios/{scenario_id}")
    async def get_scenario(scenario_id: str):
        return _json_response(_load_scenario(scenario_id))

    @app.patch("/scenarios/{scenario_id}")
    async def patch_scenario(scenario_id: str, request: Request):
        data = await _body(request)
        expected = _if_match(request)
        if expected is None:
            raise VersionConflict("PATCH requires an If-Match version header")
        with store.lock("scenario", scenario_id):
            scenario = _load_scenario(scenario_id)
            _check_version(scenario, expected)
            changed = False
            if "target" in data:
                io_formats.target_from_dict(data["target"])
                scenario["target"] = data["target"]
                changed = True
            if "strategy" in data:
                io_formats.strategy_from_dict(data["strategy"])
                scenario["strategy"] = data["strategy"]
                changed = True
            if "horizon_years" in data:
                scenario["horizon_years"] = int(data["horizon_years"])
                changed = True
            if "model" in data:
                io_formats.model_from_dict(data["model"])
                scenario["model"] = data["model"]
                changed = True
            if "discrete_inputs" in data:
                scenario["discrete_inputs"] = list(data["discrete_inputs"])
                changed = True
            if changed:
                # The stored plan no longer matches the parameters.
                scenario["latest_plan"] = None
                scenario["evaluations"] = []
            scenario["version"] += 1
            store.put("scenario", scenario_id, scenario)
        return _json_response(scenario)

    @app.post("/scenarios/{scenario_id}/plan")
    async def compute_plan(scenario_id: str, request: Request):
        expected = _if_match(request)
        with store.lock("scenario", scenario_id):
            scenario = _load_scenario(scenario_id)
            _check_version(scenario, expected)
            plan = _scenario_plan(scenario)
            scenario["latest_plan"] = io_formats.plan_to_dict(plan)
            scenario["version"] += 1
            store.put("scenario", scenario_id, scenario)
            return _json_response(scenario["latest_plan"])

    @app.post("/scenarios/{scenario_id}/what-if")
    async def what_if(scenario_id: str, request: Request):
        overrides = await _body(request)
        scenario = _load_scenario(scenario_id)
        plan = _scenario_plan(scenario, overrides)
        return _json_response(io_formats.plan_to_dict(plan))

    @app.post("/scenarios/{scenario_id}/realized")
    async def submit_realized(scenario_id: str, request: Request):
        data = await _body(request)
        expected = _if_match(request)
        for key in ("year", "input_levels", "output_level"):
            if key not in data:
                raise ParseError(f"realized submission is missing {key!r}")
        with store.lock("scenario", scenario_id):
            scenario = _load_scenario(scenario_id)
            _check_version(scenario, expected)
            if scenario["latest_plan"] is None:
                raise MissingPlan("scenario has no computed plan to evaluate against")
            plan = io_formats.plan_from_dict(scenario["latest_plan"])
            year = int(data["year"])
            row = ObservationRow(
                period=year,
                input_levels={str(k): float(v) for k, v in data["input_levels"].items()},
                output_level=float(data["output_level"]),
            )
            if not plan.base.year <= year <= plan.terminal.year:
                raise PeriodMismatch(
                    f"year {year} is outside the plan horizon "
                    f"{plan.base.year}..{plan.terminal.year}",
                    year=year,
                )
            evaluation = planner.evaluate_plan(
                plan,
                _single_row_dataset(plan, row),
            )[0]
            payload = io_formats.evaluation_to_dict(evaluation)
            scenario["evaluations"].append(payload)
            scenario["version"] += 1
            store.put("scenario", scenario_id, scenario)
            return _json_response(payload)

    @app.get("/scenarios/{scenario_id}/report")
    async def report(scenario_id: str, format: str = "json"):
        scenario = _load_scenario(scenario_id)
        if scenario["latest_plan"] is None:
            raise MissingPlan("scenario has no computed plan to report")
        if format == "csv":
            plan = io_formats.plan_from_dict(scenario["latest_plan"])
            return Response(content=io_formats.write_plan_csv(plan), media_type="text/csv")
        # Serve the stored record verbatim: byte-identical to the plan response.
        return _json_response(scenario["latest_plan"])

    return app


def _single_row_dataset(plan: planner.GrowthPlan, row: ObservationRow):
    from .estimation import InputDefinition, TimeSeriesDataset

    inputs = tuple(InputDefinition(id=i) for i in plan.model.elasticities)
    return TimeSeriesDataset(inputs=inputs, observations=(row,))


__all__ = ["JsonFileStore", "build_app"]
