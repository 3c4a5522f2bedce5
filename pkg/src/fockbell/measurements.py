"""Local projective measurements on the two-mode state.

A setting ``(theta, phi)`` selects the single-mode direction
``cos(theta)|0> + exp(i phi) sin(theta)|1>``; outcome 1 means the projector
onto that direction fired, outcome 0 means its complement did.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NonHermitianOperator, ZeroProbabilityOutcome
from .fock import IDENTITY, NUMBER_OP, TwoModeState, make_raw_state

HERMITIAN_TOL = 1e-12
PROB_TOL = 1e-12
TWO_PI = 2 * math.pi

Side = Literal["A", "B"]


@dataclass(frozen=True)
class MeasurementSetting:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("setting angles must be finite")
        # roundoff from pi/2 literals lands a hair outside the range
        if -1e-12 <= theta < 0:
            theta = 0.0
        elif math.pi / 2 < theta <= math.pi / 2 + 1e-12:
            theta = math.pi / 2
        if not 0 <= theta <= math.pi / 2:
            raise ValueError(f"theta={theta!r} outside [0, pi/2]")
        phi = math.fmod(phi, TWO_PI)
        if phi < 0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    def vector(self) -> np.ndarray:
        return mode_vectors(self.theta, self.phi)


# Named settings: P_a / P_b test presence of a particle; the primed ones
# test (|1> + sqrt3|0>)/2 on Alice's side and (|1> - sqrt3|0>)/2 on Bob's.
PRESENCE = MeasurementSetting(math.pi / 2, 0.0)
ALICE_PRIME = MeasurementSetting(math.pi / 6, 0.0)
BOB_PRIME = MeasurementSetting(math.pi / 6, math.pi)


def mode_vectors(theta, phi) -> np.ndarray:
    """Vectorized :meth:`MeasurementSetting.vector`; result has shape ``(..., 2)``."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    # presence projectors must be exactly diagonal; cos(pi/2) is 6e-17 in floating point
    cos = np.where(theta == math.pi / 2, 0.0, np.cos(theta))
    return np.stack([cos + 0j, np.exp(1j * phi) * np.sin(theta)], axis=-1)


def mode_projector(m: MeasurementSetting) -> np.ndarray:
    v = m.vector()
    return np.outer(v, v.conj())


def _check_hermitian(op: np.ndarray, label: str) -> np.ndarray:
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"{label} must be 2x2, got {op.shape}")
    if np.linalg.norm(op - op.conj().T, 2) > HERMITIAN_TOL:
        raise NonHermitianOperator(f"{label} is not Hermitian")
    return op


def expectation(s: TwoModeState, op_a=IDENTITY, op_b=IDENTITY) -> float:
    """``<s| op_a (x) op_b |s>`` for Hermitian single-mode operators."""
    op_a = _check_hermitian(op_a, "op_a")
    op_b = _check_hermitian(op_b, "op_b")
    psi = s.amplitudes
    value = np.vdot(psi, np.kron(op_a, op_b) @ psi)
    # Hermitian inputs leave only roundoff in the imaginary part
    scale = max(1.0, np.linalg.norm(op_a, 2) * np.linalg.norm(op_b, 2))
    if abs(value.imag) > HERMITIAN_TOL * scale:
        raise NonHermitianOperator(f"expectation has imaginary part {value.imag:g}")
    return float(value.real)


def outcome_operators(m: MeasurementSetting) -> tuple[np.ndarray, np.ndarray]:
    """``(M0, M1)`` with ``M1`` the projector and ``M0 = I - M1``."""
    fire = mode_projector(m)
    return IDENTITY - fire, fire


def joint_distribution(s: TwoModeState, a: MeasurementSetting, b: MeasurementSetting) -> np.ndarray:
    """Table ``p[i, j]`` of Alice outcome ``i`` and Bob outcome ``j``."""
    ops_a, ops_b = outcome_operators(a), outcome_operators(b)
    table = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            table[i, j] = expectation(s, ops_a[i], ops_b[j])
    return table


def post_measurement_state(
    s: TwoModeState, side: Side, m: MeasurementSetting, outcome: int
) -> tuple[TwoModeState, float]:
    """Lüders update after one side obtains ``outcome``.

    Returns the collapsed state and the probability of the outcome.
    """
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    local = outcome_operators(m)[outcome]
    if side == "A":
        op = np.kron(local, IDENTITY)
    elif side == "B":
        op = np.kron(IDENTITY, local)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    projected = op @ s.amplitudes
    prob = float(np.vdot(projected, projected).real)
    if prob <= PROB_TOL:
        raise ZeroProbabilityOutcome(f"outcome {outcome} on side {side} has probability {prob:g}")
    return make_raw_state(projected), prob


def commutator_norm(m: MeasurementSetting) -> float:
    """Spectral norm of ``[P(m), N]``; equals ``|cos(theta) sin(theta)|``."""
    proj = mode_projector(m)
    return float(np.linalg.norm(proj @ NUMBER_OP - NUMBER_OP @ proj, 2))
