import math

import numpy as np
import pytest

from fockbell.bell import (
    ChSettings,
    Classification,
    DeterministicStrategy,
    all_strategies,
    ch_value,
    ch_value_from_tables,
    ch_values,
    classify,
    deterministic_ch_value,
    lhv_bounds,
    reference_settings,
)
from fockbell.fock import basis_state
from fockbell.measurements import PRESENCE

import oracle
from conftest import random_state


def test_reference_value(singlet):
    assert ch_value(singlet, reference_settings()) == pytest.approx(-0.125, abs=1e-12)


def test_collapsed_settings_give_one(singlet):
    # reduces to <P_a> + <P_b> - 2 <P_a P_b> = 0.5 + 0.5 - 0
    c = ChSettings(PRESENCE, PRESENCE, PRESENCE, PRESENCE)
    assert ch_value(singlet, c) == pytest.approx(1, abs=1e-12)


def test_vacuum_matches_oracle():
    c = reference_settings()
    psi = np.array([1, 0, 0, 0], dtype=complex)
    expected = oracle.ch(psi, c.angles())
    assert expected == pytest.approx(15 / 16, abs=1e-12)
    value = ch_value(basis_state(0, 0), c)
    assert value == pytest.approx(expected, abs=1e-12)
    assert 0 <= value <= 1


@pytest.mark.parametrize(
    "bits, expected",
    [((0, 0, 0, 0), 0), ((0, 1, 0, 1), 1), ((1, 1, 1, 1), 0)],
)
def test_deterministic_values(bits, expected):
    assert deterministic_ch_value(DeterministicStrategy(*bits)) == expected


def test_strategy_validation():
    with pytest.raises(ValueError):
        DeterministicStrategy(0, 2, 0, 0)


def test_enumeration():
    strategies = all_strategies()
    assert len(set(strategies)) == 16
    values = [deterministic_ch_value(d) for d in strategies]
    assert lhv_bounds() == (0, 1)
    assert deterministic_ch_value(DeterministicStrategy(0, 0, 0, 0)) == min(values)
    assert deterministic_ch_value(DeterministicStrategy(0, 1, 0, 1)) == max(values)
    assert set(values) <= {0, 1}


@pytest.mark.parametrize(
    "value, label",
    [
        (-0.125, Classification.BELOW_LOWER),
        (0.5, Classification.WITHIN_CLASSICAL),
        (1.2, Classification.ABOVE_UPPER),
        (-1e-13, Classification.WITHIN_CLASSICAL),
        (1 + 1e-13, Classification.WITHIN_CLASSICAL),
        (-2e-12, Classification.BELOW_LOWER),
    ],
)
def test_classify(value, label):
    result = classify(value)
    assert result.classification is label
    assert result.value == value


def test_classify_rejects_nan():
    with pytest.raises(ValueError):
        classify(math.nan)


def test_mirrored_settings_invariant(singlet, rng):
    for _ in range(20):
        c = ChSettings.from_angles(
            [rng.uniform(0, math.pi / 2) if k % 2 == 0 else rng.uniform(0, 2 * math.pi) for k in range(8)]
        )
        assert ch_value(singlet, c.mirrored()) == pytest.approx(ch_value(singlet, c), abs=1e-12)


def test_table_route_agrees(rng):
    for _ in range(20):
        s = random_state(rng)
        c = ChSettings.from_angles(
            [rng.uniform(0, math.pi / 2) if k % 2 == 0 else rng.uniform(0, 2 * math.pi) for k in range(8)]
        )
        assert ch_value_from_tables(s, c) == pytest.approx(ch_value(s, c), abs=1e-12)


def test_vectorized_route_agrees(rng):
    s = random_state(rng)
    angles = np.column_stack(
        [rng.uniform(0, math.pi / 2, 50) if k % 2 == 0 else rng.uniform(0, 2 * math.pi, 50) for k in range(8)]
    )
    batch = ch_values(s, *angles.T)
    for row, value in zip(angles, batch):
        assert value == pytest.approx(ch_value(s, ChSettings.from_angles(row)), abs=1e-12)


def test_from_angles_round_trip():
    c = reference_settings()
    assert ChSettings.from_angles(c.angles()) == c
    with pytest.raises(ValueError):
        ChSettings.from_angles([0.0] * 7)
