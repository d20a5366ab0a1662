"""Forward growth accounting: rates, residuals, and contribution breakdowns.

Output growth decomposes additively into weighted input growth plus a
productivity residual:

    g_Y = g_TFP + sum_i e_i * g_i

The residual is always computed as the remainder, never measured directly.
The additive identity is first-order; the exact multiplicative composition
``(1 + g_Y) = (1 + g_TFP) * (1 + g)^sum(e)`` differs from it by a
second-order term, which ``approximation_gap`` quantifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import InvalidArgument, MismatchedInputs, MissingInputRate
from .estimation import ObservationRow

# Reserved source id for the productivity term in decompositions.
TFP_SOURCE = "TFP"


@dataclass(frozen=True)
class GrowthRates:
    """Per-period growth rates for output and each input, as fractions."""

    output_growth: float
    input_growth: Mapping[str, float]
    tfp_growth: float | None = None

    def __post_init__(self):
        rates = [self.output_growth, *self.input_growth.values()]
        if self.tfp_growth is not None:
            rates.append(self.tfp_growth)
        for r in rates:
            if not r > -1.0:
                raise InvalidArgument(f"growth rate {r} would drive a level to zero or below")


@dataclass(frozen=True)
class Decomposition:
    """Attribution of one period's output growth to its sources.

    ``contributions`` holds ``e_i * g_i`` per input plus the residual under
    the ``TFP`` key; they sum to ``output_growth`` exactly because the
    residual closes the identity. ``shares_of_total`` divides by
    ``output_growth`` and is ``None`` when that is zero.
    """

    output_growth: float
    contributions: Mapping[str, float]
    residual: float
    shares_of_total: Mapping[str, float] | None


def growth_between(prev: ObservationRow, next: ObservationRow, log_rates: bool = False) -> GrowthRates:
    """Discrete growth rates from one observation to the next.

    Default is the tabular convention ``(next - prev) / prev``; with
    ``log_rates`` the rates are log differences ``ln(next / prev)``, under
    which the accounting identity is exact rather than first-order.
    """
    if set(prev.input_levels) != set(next.input_levels):
        raise MismatchedInputs(
            "rows do not share the same input set",
            prev=sorted(prev.input_levels), next=sorted(next.input_levels),
        )

    def rate(a: float, b: float) -> float:
        return math.log(b / a) if log_rates else (b - a) / a

    return GrowthRates(
        output_growth=rate(prev.output_level, next.output_level),
        input_growth={
            key: rate(level, next.input_levels[key])
            for key, level in prev.input_levels.items()
        },
    )


def solow_residual(rates: GrowthRates, elasticities: Mapping[str, float]) -> float:
    """Productivity growth as the unexplained remainder: g_Y - sum e_i * g_i."""
    explained = 0.0
    for key, e in elasticities.items():
        if key not in rates.input_growth:
            raise MissingInputRate(f"no growth rate for input {key!r}", input=key)
        explained += e * rates.input_growth[key]
    return rates.output_growth - explained


def decompose(rates: GrowthRates, elasticities: Mapping[str, float]) -> Decomposition:
    """Break output growth into per-input contributions plus the residual."""
    contributions = {}
    for key, e in elasticities.items():
        if key not in rates.input_growth:
            raise MissingInputRate(f"no growth rate for input {key!r}", input=key)
        contributions[key] = e * rates.input_growth[key]
    residual = rates.output_growth - sum(contributions.values())
    contributions[TFP_SOURCE] = residual

    g_y = rates.output_growth
    shares = {key: value / g_y for key, value in contributions.items()} if g_y != 0 else None
    return Decomposition(
        output_growth=g_y,
        contributions=contributions,
        residual=residual,
        shares_of_total=shares,
    )


def exact_compose(tfp_growth: float, common_input_growth: float, elasticity_sum: float) -> float:
    """Exact output growth when every input grows at one common rate.

    ``(1 + g_TFP) * (1 + g)^elasticity_sum - 1``: the multiplicative form of
    the accounting identity, which the additive form approximates.
    """
    if not tfp_growth > -1.0 or not common_input_growth > -1.0:
        raise InvalidArgument("growth rates must exceed -1")
    return (1.0 + tfp_growth) * (1.0 + common_input_growth) ** elasticity_sum - 1.0


def approximation_gap(tfp_growth: float, common_input_growth: float) -> float:
    """Second-order error of the additive identity under constant returns.

    Equals ``tfp_growth * common_input_growth`` analytically; vanishes as the
    rates approach zero.
    """
    return exact_compose(tfp_growth, common_input_growth, 1.0) - (tfp_growth + common_input_growth)


def absolute_contributions(result: Decomposition, base_output: float) -> dict[str, float]:
    """Contributions in output units rather than rates.

    Each source's rate contribution scaled by the base-period output level,
    so the values sum to the absolute output change.
    """
    if not base_output > 0:
        raise InvalidArgument(f"base output must be positive, got {base_output}")
    return {source: value * base_output for source, value in result.contributions.items()}
