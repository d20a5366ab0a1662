"""Turn growth objectives into required annual rates or horizons.

Objectives come in three kinds: reach a multiple of today's output, catch up
with a rival on a known trajectory, or an explicitly given annual rate. All
compounding is discrete and annual; horizons are real-valued and callers
round up to whole planning years only when building schedules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    InvalidArgument,
    NeverCatches,
    NoConvergence,
    NonPositiveHorizon,
    NonPositiveRate,
    NoSignChange,
    UnreachableTarget,
)

MULTIPLE = "multiple"
CATCH_UP = "catchup"
EXPLICIT_RATE = "explicit_rate"

TARGET_KINDS = (MULTIPLE, CATCH_UP, EXPLICIT_RATE)


@dataclass(frozen=True)
class CatchupProblem:
    """A follower chasing a leader that compounds at a known rate."""

    follower_level: float
    leader_level: float
    leader_rate: float
    follower_rate: float | None = None

    def __post_init__(self):
        if not self.follower_level > 0 or not self.leader_level > 0:
            raise InvalidArgument("levels must be positive")
        if not self.leader_rate > -1.0:
            raise InvalidArgument("leader rate must exceed -1")
        if self.follower_rate is not None and not self.follower_rate > -1.0:
            raise InvalidArgument("follower rate must exceed -1")


@dataclass(frozen=True)
class GrowthTarget:
    """A growth objective; which fields are set depends on ``kind``."""

    kind: str
    multiple: float | None = None
    rival: CatchupProblem | None = None
    horizon_years: float | None = None
    rate: float | None = None

    def __post_init__(self):
        if self.kind not in TARGET_KINDS:
            raise InvalidArgument(f"unknown target kind {self.kind!r}", kinds=TARGET_KINDS)
        if self.multiple is not None and not self.multiple > 0:
            raise InvalidArgument("multiple must be positive")
        if self.horizon_years is not None and not self.horizon_years > 0:
            raise InvalidArgument("horizon must be positive")
        if self.kind == MULTIPLE:
            if self.multiple is None or self.rival is not None:
                raise InvalidArgument("a multiple target needs `multiple` and no rival")
        elif self.kind == CATCH_UP:
            if self.rival is None or self.multiple is not None:
                raise InvalidArgument("a catch-up target needs `rival` and no multiple")
        else:
            if self.rate is None or self.multiple is not None or self.rival is not None:
                raise InvalidArgument("an explicit-rate target needs only `rate`")


def future_value(present: float, rate: float, years: float) -> float:
    """Compound a level forward: ``present * (1 + rate)^years``."""
    if not present > 0:
        raise InvalidArgument(f"present value must be positive, got {present}")
    if not rate > -1.0:
        raise InvalidArgument(f"rate must exceed -1, got {rate}")
    if years < 0:
        raise InvalidArgument(f"years must be nonnegative, got {years}")
    return present * (1.0 + rate) ** years


def years_to_multiple_rule70(rate_percent: float) -> float:
    """Doubling-time shortcut: 70 divided by the growth rate in percent."""
    if not rate_percent > 0:
        raise NonPositiveRate(f"rule of 70 needs a positive rate, got {rate_percent}")
    return 70.0 / rate_percent


def years_to_multiple_exact(multiple: float, rate: float) -> float:
    """Years for a level to reach ``multiple`` times itself at ``rate``."""
    if not multiple > 0:
        raise InvalidArgument(f"multiple must be positive, got {multiple}")
    if not rate > -1.0:
        raise InvalidArgument(f"rate must exceed -1, got {rate}")
    if multiple == 1.0:
        return 0.0
    log_m = math.log(multiple)
    log_r = math.log1p(rate)
    if log_r == 0.0 or (log_m > 0) != (log_r > 0):
        raise UnreachableTarget(
            f"a multiple of {multiple} is unreachable at rate {rate}",
            multiple=multiple, rate=rate,
        )
    return log_m / log_r


def catchup_horizon(problem: CatchupProblem) -> float:
    """Years until the follower's level first equals the leader's.

    Solves ``follower * (1+g_f)^N = leader * (1+g_l)^N``. Returns 0 when the
    follower is already at or ahead of the leader.
    """
    if problem.follower_rate is None:
        raise InvalidArgument("catch-up horizon needs the follower's rate")
    if problem.follower_level >= problem.leader_level:
        return 0.0
    if problem.follower_rate <= problem.leader_rate:
        raise NeverCatches(
            "follower is behind and grows no faster than the leader",
            follower_rate=problem.follower_rate, leader_rate=problem.leader_rate,
        )
    gap = math.log(problem.leader_level) - math.log(problem.follower_level)
    pace = math.log1p(problem.follower_rate) - math.log1p(problem.leader_rate)
    return gap / pace


def required_rate(problem: CatchupProblem, horizon_years: float) -> float:
    """Annual rate the follower needs to match the leader in ``horizon_years``.

    Closed form: ``(leader_future / follower_level)^(1/N) - 1``. The numeric
    counterpart ``required_rate_numeric`` solves the same equation with the
    bracketed root finder; the two agree to near machine precision.
    """
    if not horizon_years > 0:
        raise NonPositiveHorizon(f"horizon must be positive, got {horizon_years}")
    target = future_value(problem.leader_level, problem.leader_rate, horizon_years)
    if problem.follower_level == target:
        return 0.0
    return (target / problem.follower_level) ** (1.0 / horizon_years) - 1.0


def required_rate_numeric(problem: CatchupProblem, horizon_years: float) -> float:
    """Root-finder validation path for ``required_rate``."""
    if not horizon_years > 0:
        raise NonPositiveHorizon(f"horizon must be positive, got {horizon_years}")
    target = future_value(problem.leader_level, problem.leader_rate, horizon_years)

    def shortfall(g: float) -> float:
        return problem.follower_level * (1.0 + g) ** horizon_years - target

    lo = -1.0 + 1e-12
    hi = 1.0
    while shortfall(hi) < 0:
        hi = 2.0 * hi + 1.0
        if hi > 1e9:
            raise NoConvergence("could not bracket the required rate", hi=hi)
    return solve_rate_numeric(shortfall, (lo, hi))


def solve_rate_numeric(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Find a root of ``f`` inside a sign-changing bracket.

    Bisection keeps the bracket valid and a secant (Newton-style) candidate
    tightens it each iteration, until the bracket collapses to floating-point
    width. The collapsed point is accepted only if its residual is below
    ``tol`` relative to the bracket's initial function magnitudes; a
    residual-only early exit would accept far-from-root points in flat
    regions when the opposite endpoint is astronomically steep.
    """
    lo, hi = bracket
    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(
            f"f({lo}) = {f_lo} and f({hi}) = {f_hi} have the same sign",
            lo=lo, hi=hi,
        )

    scale = max(abs(f_lo), abs(f_hi))

    def tighten(x: float, fx: float):
        nonlocal lo, hi, f_lo, f_hi
        if (fx > 0) == (f_hi > 0):
            hi, f_hi = x, fx
        else:
            lo, f_lo = x, fx

    for _ in range(max_iter):
        if abs(hi - lo) <= 4.0 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            break

        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        tighten(mid, f_mid)

        # Secant polish through the tightened bracket.
        if f_hi != f_lo:
            cand = hi - f_hi * (hi - lo) / (f_hi - f_lo)
            if min(lo, hi) < cand < max(lo, hi):
                f_cand = f(cand)
                if f_cand == 0.0:
                    return cand
                if abs(f_cand) < min(abs(f_lo), abs(f_hi)):
                    tighten(cand, f_cand)

    best, f_best = (lo, f_lo) if abs(f_lo) <= abs(f_hi) else (hi, f_hi)
    if abs(f_best) <= tol * scale:
        return best
    raise NoConvergence(
        "root finder did not meet the residual tolerance",
        best=best, residual=f_best, tolerance=tol * scale,
    )


def annual_rate_for(target: GrowthTarget, default_horizon: float | None = None) -> float:
    """Required annual output growth implied by a target.

    For horizon-based kinds the target's own horizon wins; otherwise
    ``default_horizon`` (typically the plan's) is used.
    """
    if target.kind == EXPLICIT_RATE:
        return float(target.rate)
    horizon = target.horizon_years if target.horizon_years is not None else default_horizon
    if target.kind == MULTIPLE:
        if target.rate is not None:
            return float(target.rate)
        if horizon is None:
            raise InvalidArgument("multiple target needs a horizon to imply a rate")
        return float(target.multiple) ** (1.0 / horizon) - 1.0
    # Catch-up: with a horizon, solve for the rate; else plan at the
    # follower's assumed rate over the catch-up horizon.
    if horizon is not None:
        return required_rate(target.rival, horizon)
    if target.rival.follower_rate is not None:
        return float(target.rival.follower_rate)
    raise InvalidArgument("catch-up target needs a horizon or a follower rate")


def implied_horizon(target: GrowthTarget) -> float:
    """Horizon in years implied by a target, where one is derivable."""
    if target.horizon_years is not None:
        return float(target.horizon_years)
    if target.kind == MULTIPLE and target.rate is not None:
        return years_to_multiple_exact(float(target.multiple), float(target.rate))
    if target.kind == CATCH_UP:
        return catchup_horizon(target.rival)
    raise InvalidArgument(f"target of kind {target.kind!r} does not imply a horizon")
