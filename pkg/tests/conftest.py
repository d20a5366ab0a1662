"""Shared fixtures: the propane-distributor planning case used as golden data.

A four-input delivery operation (propane input PI, employees EM, trucks PT,
building space BD) with constant returns to scale, planning five years of
15% annual output growth. Expected table cells are frozen reference values;
the 0.1% tolerances absorb their rounding chain.
"""

from __future__ import annotations

import math
import random

import pytest

from growthplan import ObservationRow, ProductionModel, InputDefinition, TimeSeriesDataset

PROPANE_ELASTICITIES = {"PI": 0.20, "EM": 0.30, "PT": 0.40, "BD": 0.10}

PROPANE_BASE = {
    "Y": 632_057_000.0,
    "TFP": 9811.0,
    "PI": 695_262_700.0,
    "EM": 4000.0,
    "PT": 2400.0,
    "BD": 1_200_000.0,
}

# Leader/follower gallon sales levels for the catch-up problem.
LEADER_LEVEL = 1_097_000_000.0
FOLLOWER_LEVEL = 632_057_000.0

# Inputs-only regime: every input compounds at the 15% output rate.
TABLE_INPUTS_ONLY = {
    1: {"Y": 726_865_550, "TFP": 9811, "PI": 799_552_105, "EM": 4600, "PT": 2760, "BD": 1_380_000},
    2: {"Y": 835_895_383, "TFP": 9811, "PI": 919_484_921, "EM": 5290, "PT": 3174, "BD": 1_587_000},
    3: {"Y": 961_279_690, "TFP": 9811, "PI": 1_057_407_659, "EM": 6084, "PT": 3650, "BD": 1_825_050},
    4: {"Y": 1_105_471_643, "TFP": 9811, "PI": 1_216_018_808, "EM": 6996, "PT": 4198, "BD": 2_098_808},
    5: {"Y": 1_271_292_390, "TFP": 9811, "PI": 1_398_421_629, "EM": 8045, "PT": 4827, "BD": 2_413_629},
}

# Mixed regime: 5% annual TFP growth, inputs at the exact residual rate
# (printed as 9.53% in the source tables).
TABLE_MIXED = {
    1: {"Y": 726_865_550, "TFP": 10_302, "PI": 761_521_235, "EM": 4381, "PT": 2629, "BD": 1_314_360},
    2: {"Y": 835_895_383, "TFP": 10_817, "PI": 834_094_209, "EM": 4799, "PT": 2879, "BD": 1_439_619},
    3: {"Y": 961_279_690, "TFP": 11_357, "PI": 913_583_387, "EM": 5256, "PT": 3154, "BD": 1_576_814},
    4: {"Y": 1_105_471_643, "TFP": 11_925, "PI": 1_000_647_884, "EM": 5757, "PT": 3454, "BD": 1_727_085},
    5: {"Y": 1_271_292_390, "TFP": 12_522, "PI": 1_096_009_627, "EM": 6306, "PT": 3783, "BD": 1_891_676},
}

DISCRETE_INPUTS = ("EM", "PT")


@pytest.fixture
def propane_model() -> ProductionModel:
    return ProductionModel(
        tfp_level=PROPANE_BASE["TFP"],
        elasticities=dict(PROPANE_ELASTICITIES),
        crts_imposed=True,
    )


@pytest.fixture
def propane_base_row() -> ObservationRow:
    return ObservationRow(
        period=0,
        input_levels={k: PROPANE_BASE[k] for k in PROPANE_ELASTICITIES},
        output_level=PROPANE_BASE["Y"],
    )


@pytest.fixture
def propane_dataset(propane_base_row) -> TimeSeriesDataset:
    inputs = tuple(
        InputDefinition(id=key, discrete=key in DISCRETE_INPUTS)
        for key in PROPANE_ELASTICITIES
    )
    return TimeSeriesDataset(inputs=inputs, observations=(propane_base_row,))


def assert_close(actual: float, expected: float, rel: float, label: str = "") -> None:
    """Relative-tolerance assertion with a readable failure message."""
    err = abs(actual - expected) / abs(expected)
    assert err <= rel, f"{label or 'value'}: {actual} vs {expected} (rel err {err:.3e} > {rel:.1e})"


def synthetic_dataset(tfp, elasticities, n_rows, seed=0, log_noise=0.0):
    """Rows generated exactly from a known model, optional noise in logs."""
    rng = random.Random(seed)
    ids = list(elasticities)
    observations = []
    for period in range(n_rows):
        levels = {i: math.exp(rng.uniform(-1.0, 3.0)) for i in ids}
        log_y = math.log(tfp) + sum(e * math.log(levels[i]) for i, e in elasticities.items())
        log_y += rng.gauss(0.0, log_noise) if log_noise else 0.0
        observations.append(ObservationRow(period=period, input_levels=levels,
                                           output_level=math.exp(log_y)))
    inputs = tuple(InputDefinition(id=i) for i in ids)
    return TimeSeriesDataset(inputs=inputs, observations=tuple(observations))
