"""Domain error taxonomy.

Every error carries a stable machine-readable ``code`` (the class name) so
that the CLI and the HTTP service can surface failures uniformly.
"""

from __future__ import annotations

from typing import Any


class GrowthPlanError(Exception):
    """Base class for all domain errors raised by this package."""

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail = detail

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "detail": self.detail}


class NonPositiveLevel(GrowthPlanError):
    """An input or output quantity was zero or negative."""


class MismatchedInputs(GrowthPlanError):
    """Two records do not cover the same set of input ids."""


class InsufficientObservations(GrowthPlanError):
    """Too few observations for the requested estimation."""


class SingularDesign(GrowthPlanError):
    """Logged regressors are collinear; the fit is not identified."""


class MissingInputRate(GrowthPlanError):
    """A growth rate is required for an input that has none."""


class NonPositiveRate(GrowthPlanError):
    """A strictly positive growth rate was required."""


class UnreachableTarget(GrowthPlanError):
    """No horizon can reach the requested multiple at the given rate."""


class NeverCatches(GrowthPlanError):
    """The follower grows no faster than the leader it trails."""


class NonPositiveHorizon(GrowthPlanError):
    """A strictly positive planning horizon was required."""


class NoSignChange(GrowthPlanError):
    """Root bracket endpoints have the same sign."""


class NoConvergence(GrowthPlanError):
    """Root finder exhausted its iteration budget."""


class InfeasibleMix(GrowthPlanError):
    """Productivity growth alone exceeds the target and input contraction is disallowed."""


class PeriodMismatch(GrowthPlanError):
    """Realized periods do not align with plan years."""


class HorizonExhausted(GrowthPlanError):
    """No planning years remain in which to reach the target."""


class ParseError(GrowthPlanError):
    """Malformed dataset, config, or serialized record."""


class InvalidArgument(GrowthPlanError):
    """An argument violates a documented precondition."""


class NotFound(GrowthPlanError):
    """A stored record id does not exist."""


class VersionConflict(GrowthPlanError):
    """Optimistic concurrency check failed for a stored scenario."""


class MissingPlan(GrowthPlanError):
    """The scenario has no computed plan yet."""
