"""Specify and fit multiplicative (Cobb-Douglas) production functions.

A production function ``Y = TFP * prod_i X_i^e_i`` links observed input
quantities to output. Taking logs makes it linear, so fitting is ordinary
least squares of ``ln Y`` on the logged inputs, the intercept being
``ln TFP``. Constant returns to scale can be imposed as a restriction by
substituting the last exponent with one minus the sum of the others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import (
    InsufficientObservations,
    InvalidArgument,
    MismatchedInputs,
    NonPositiveLevel,
    SingularDesign,
)

CRTS = "CRTS"
DRTS = "DRTS"
IRTS = "IRTS"

RTS_TOLERANCE = 1e-6


@dataclass(frozen=True)
class InputDefinition:
    """One factor of production: id, display name, physical unit."""

    id: str
    name: str = ""
    unit: str = "units"
    discrete: bool = False

    def __post_init__(self):
        if not self.id:
            raise InvalidArgument("input id must be nonempty")
        if not self.unit:
            raise InvalidArgument("input unit must be nonempty", input=self.id)
        if not self.name:
            object.__setattr__(self, "name", self.id)


@dataclass(frozen=True)
class ObservationRow:
    """Input and output quantities for one period. All levels must be > 0."""

    period: int | str
    input_levels: Mapping[str, float]
    output_level: float

    def __post_init__(self):
        for key, level in self.input_levels.items():
            if not level > 0:
                raise NonPositiveLevel(
                    f"input {key!r} has non-positive level {level}",
                    period=self.period, input=key, level=level,
                )
        if not self.output_level > 0:
            raise NonPositiveLevel(
                f"output has non-positive level {self.output_level}",
                period=self.period, level=self.output_level,
            )


@dataclass(frozen=True)
class TimeSeriesDataset:
    """Ordered observations over a fixed set of inputs."""

    inputs: tuple[InputDefinition, ...]
    observations: tuple[ObservationRow, ...]
    output_unit: str = "units"

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "observations", tuple(self.observations))
        ids = [d.id for d in self.inputs]
        if len(set(ids)) != len(ids):
            raise InvalidArgument("duplicate input ids in dataset", ids=ids)
        want = set(ids)
        for row in self.observations:
            if set(row.input_levels) != want:
                raise MismatchedInputs(
                    f"row {row.period!r} does not cover the dataset inputs",
                    period=row.period,
                    expected=sorted(want),
                    got=sorted(row.input_levels),
                )

    @property
    def input_ids(self) -> list[str]:
        return [d.id for d in self.inputs]

    def discrete_ids(self) -> list[str]:
        return [d.id for d in self.inputs if d.discrete]


@dataclass(frozen=True)
class ProductionModel:
    """Fitted production function: TFP level plus one exponent per input.

    ``warnings`` flags fits whose exponents fall outside (0, 1); such a model
    is still returned so the planner can see and report it.
    """

    tfp_level: float
    elasticities: Mapping[str, float]
    crts_imposed: bool = False
    fit_residual_variance: float = 0.0
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.tfp_level > 0:
            raise InvalidArgument(f"TFP level must be positive, got {self.tfp_level}")
        if self.fit_residual_variance < 0:
            raise InvalidArgument("residual variance cannot be negative")
        if self.crts_imposed and abs(self.elasticity_sum() - 1.0) > 1e-9:
            raise InvalidArgument(
                "CRTS-imposed model must have exponents summing to 1",
                elasticity_sum=self.elasticity_sum(),
            )

    def elasticity_sum(self) -> float:
        return float(sum(self.elasticities.values()))

    def predict(self, input_levels: Mapping[str, float]) -> float:
        """Output level implied by the model at the given input levels."""
        out = self.tfp_level
        for key, e in self.elasticities.items():
            try:
                x = input_levels[key]
            except KeyError:
                raise MismatchedInputs(f"missing level for input {key!r}", input=key)
            if not x > 0:
                raise NonPositiveLevel(f"input {key!r} has non-positive level {x}", input=key)
            out *= x ** e
        return out


@dataclass(frozen=True)
class RtsClass:
    """Returns-to-scale classification of a fitted model."""

    label: str
    elasticity_sum: float


def fit_cobb_douglas(data: TimeSeriesDataset, impose_crts: bool = False) -> ProductionModel:
    """Least-squares fit of the log-linear production function.

    Unrestricted: regress ``ln Y`` on all logged inputs with an intercept.
    With ``impose_crts`` the last input's exponent is substituted by
    ``1 - sum(others)``, i.e. ``ln(Y/X_last)`` is regressed on
    ``ln(X_i/X_last)``, which keeps the restriction exact.

    Returns the model together with the residual variance of the log fit
    (sum of squared residuals over degrees of freedom).
    """
    ids = data.input_ids
    k = len(ids)
    n = len(data.observations)
    if k == 0:
        raise InvalidArgument("dataset has no inputs")
    needed = k + 1 if impose_crts else k + 2
    if n < needed:
        raise InsufficientObservations(
            f"need at least {needed} observations to fit {k} inputs"
            f"{' under CRTS' if impose_crts else ''}, got {n}",
            needed=needed, got=n,
        )

    log_y = np.array([math.log(row.output_level) for row in data.observations])
    log_x = np.array([[math.log(row.input_levels[i]) for i in ids] for row in data.observations])

    if impose_crts:
        y = log_y - log_x[:, -1]
        design = np.column_stack([np.ones(n), log_x[:, :-1] - log_x[:, -1:]])
    else:
        y = log_y
        design = np.column_stack([np.ones(n), log_x])

    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < design.shape[1]:
        raise SingularDesign(
            "logged inputs are collinear; cannot identify all exponents",
            rank=int(rank), parameters=design.shape[1],
        )

    intercept = coef[0]
    if impose_crts:
        head = list(coef[1:])
        elasticities = dict(zip(ids[:-1], (float(v) for v in head)))
        elasticities[ids[-1]] = float(1.0 - sum(head))
    else:
        elasticities = dict(zip(ids, (float(v) for v in coef[1:])))

    residuals = y - design @ coef
    dof = max(n - design.shape[1], 1)
    variance = float(residuals @ residuals) / dof

    warnings = tuple(
        f"elasticity for {i!r} outside (0, 1): {elasticities[i]:.6g}"
        for i in ids
        if not 0.0 < elasticities[i] < 1.0
    )
    return ProductionModel(
        tfp_level=float(math.exp(intercept)),
        elasticities=elasticities,
        crts_imposed=impose_crts,
        fit_residual_variance=variance,
        warnings=warnings,
    )


def back_out_tfp(levels: ObservationRow, elasticities: Mapping[str, float]) -> float:
    """TFP level implied by one observation: ``Y / prod_i X_i^e_i``."""
    denom = 1.0
    for key, e in elasticities.items():
        try:
            x = levels.input_levels[key]
        except KeyError:
            raise MismatchedInputs(f"row lacks a level for input {key!r}", input=key)
        denom *= x ** e
    return levels.output_level / denom


def classify_rts(model: ProductionModel) -> RtsClass:
    """Classify returns to scale from the exponent sum, at 1e-6 tolerance."""
    s = model.elasticity_sum()
    if abs(s - 1.0) <= RTS_TOLERANCE:
        label = CRTS
    elif s < 1.0:
        label = DRTS
    else:
        label = IRTS
    return RtsClass(label=label, elasticity_sum=s)
