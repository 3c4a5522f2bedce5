"""Clauser-Horne expression and its local-hidden-variable bounds.

The expression is

    CH = <A'> + <B'> - <A'B'> - <A'B> - <AB'> + <AB>

where each symbol is the probability that the corresponding projector fires.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from functools import cache

import numpy as np

from .fock import IDENTITY, TwoModeState
from .measurements import (
    ALICE_PRIME,
    BOB_PRIME,
    PRESENCE,
    MeasurementSetting,
    expectation,
    joint_distribution,
    mode_projector,
    mode_vectors,
)

CLASSIFY_TOL = 1e-12


@dataclass(frozen=True)
class ChSettings:
    a: MeasurementSetting
    a_prime: MeasurementSetting
    b: MeasurementSetting
    b_prime: MeasurementSetting

    @classmethod
    def from_angles(cls, angles) -> ChSettings:
        """Build from ``(theta_a, phi_a, theta_a', phi_a', theta_b, phi_b, theta_b', phi_b')``."""
        angles = list(angles)
        if len(angles) != 8:
            raise ValueError(f"expected 8 angles, got {len(angles)}")
        return cls(*(MeasurementSetting(angles[k], angles[k + 1]) for k in range(0, 8, 2)))

    def angles(self) -> tuple[float, ...]:
        return tuple(x for m in (self.a, self.a_prime, self.b, self.b_prime) for x in (m.theta, m.phi))

    def mirrored(self) -> ChSettings:
        """Swap Alice's and Bob's roles."""
        return ChSettings(self.b, self.b_prime, self.a, self.a_prime)


def reference_settings() -> ChSettings:
    return ChSettings(a=PRESENCE, a_prime=ALICE_PRIME, b=PRESENCE, b_prime=BOB_PRIME)


class Classification(str, Enum):
    WITHIN_CLASSICAL = "WITHIN_CLASSICAL"
    BELOW_LOWER = "BELOW_LOWER"
    ABOVE_UPPER = "ABOVE_UPPER"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ChResult:
    value: float
    classification: Classification


@dataclass(frozen=True)
class DeterministicStrategy:
    """Fixed outcome for each of the four local settings."""

    out_a: int
    out_a_prime: int
    out_b: int
    out_b_prime: int

    def __post_init__(self):
        for name in ("out_a", "out_a_prime", "out_b", "out_b_prime"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1")


def ch_value(s: TwoModeState, c: ChSettings) -> float:
    proj = {name: mode_projector(getattr(c, name)) for name in ("a", "a_prime", "b", "b_prime")}
    return (
        expectation(s, proj["a_prime"], IDENTITY)
        + expectation(s, IDENTITY, proj["b_prime"])
        - expectation(s, proj["a_prime"], proj["b_prime"])
        - expectation(s, proj["a_prime"], proj["b"])
        - expectation(s, proj["a"], proj["b_prime"])
        + expectation(s, proj["a"], proj["b"])
    )


def ch_value_from_tables(s: TwoModeState, c: ChSettings) -> float:
    """Same quantity assembled from full outcome tables and their marginals."""
    t_apbp = joint_distribution(s, c.a_prime, c.b_prime)
    t_apb = joint_distribution(s, c.a_prime, c.b)
    t_abp = joint_distribution(s, c.a, c.b_prime)
    t_ab = joint_distribution(s, c.a, c.b)
    return (
        t_apbp[1, :].sum()
        + t_apbp[:, 1].sum()
        - t_apbp[1, 1]
        - t_apb[1, 1]
        - t_abp[1, 1]
        + t_ab[1, 1]
    )


def _joint_fire(psi: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    amp = np.einsum("...i,ij,...j->...", u.conj(), psi, v.conj())
    return amp.real**2 + amp.imag**2


def _alice_fire(psi: np.ndarray, u: np.ndarray) -> np.ndarray:
    w = np.einsum("...i,ij->...j", u.conj(), psi)
    return np.sum(w.real**2 + w.imag**2, axis=-1)


def _bob_fire(psi: np.ndarray, v: np.ndarray) -> np.ndarray:
    w = np.einsum("ij,...j->...i", psi, v.conj())
    return np.sum(w.real**2 + w.imag**2, axis=-1)


def ch_values(s: TwoModeState, theta_a, phi_a, theta_ap, phi_ap, theta_b, phi_b, theta_bp, phi_bp) -> np.ndarray:
    """Vectorized :func:`ch_value` over broadcastable arrays of angles."""
    psi = s.amplitudes.reshape(2, 2)
    u = mode_vectors(theta_a, phi_a)
    up = mode_vectors(theta_ap, phi_ap)
    v = mode_vectors(theta_b, phi_b)
    vp = mode_vectors(theta_bp, phi_bp)
    return (
        _alice_fire(psi, up)
        + _bob_fire(psi, vp)
        - _joint_fire(psi, up, vp)
        - _joint_fire(psi, up, v)
        - _joint_fire(psi, u, vp)
        + _joint_fire(psi, u, v)
    )


def deterministic_ch_value(d: DeterministicStrategy) -> int:
    a, ap, b, bp = d.out_a, d.out_a_prime, d.out_b, d.out_b_prime
    return ap + bp - ap * bp - ap * b - a * bp + a * b


def all_strategies() -> list[DeterministicStrategy]:
    return [DeterministicStrategy(*bits) for bits in itertools.product((0, 1), repeat=4)]


@cache
def lhv_bounds() -> tuple[int, int]:
    """Exact (min, max) of the CH expression over local hidden-variable models.

    Local models are mixtures of deterministic strategies and the expression
    is affine in the outcome probabilities, so the extremes sit on the 16
    deterministic assignments.
    """
    values = [deterministic_ch_value(d) for d in all_strategies()]
    return min(values), max(values)


def classify(value: float) -> ChResult:
    lower, upper = lhv_bounds()
    if not math.isfinite(value):
        raise ValueError(f"cannot classify non-finite value {value!r}")
    if value < lower - CLASSIFY_TOL:
        label = Classification.BELOW_LOWER
    elif value > upper + CLASSIFY_TOL:
        label = Classification.ABOVE_UPPER
    else:
        label = Classification.WITHIN_CLASSICAL
    return ChResult(float(value), label)
