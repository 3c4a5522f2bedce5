"""Two-mode Fock space truncated to occupations {0, 1} per mode.

Basis order is ``[|00>, |01>, |10>, |11>]`` with ``index = 2 * n_a + n_b``
(mode ``a`` is Alice's beam, mode ``b`` is Bob's).
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .errors import DegenerateState

NORM_TOL = 1e-12

# Single-mode number operator N = |1><1|.
NUMBER_OP = np.array([[0, 0], [0, 1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def basis_index(n_a: int, n_b: int) -> int:
    return 2 * n_a + n_b


def _as_finite_complex(values, shape) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite amplitude")
    return arr


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Normalized pure state of modes a and b.

    Build with :func:`make_state` or :func:`make_raw_state`; the amplitude
    array is read-only.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_finite_complex(self.amplitudes, (4,)).copy()
        if abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise ValueError("TwoModeState amplitudes must have unit norm")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def __getitem__(self, key: tuple[int, int]) -> complex:
        n_a, n_b = key
        return complex(self.amplitudes[basis_index(n_a, n_b)])

    def probabilities(self) -> np.ndarray:
        """Occupation-basis probabilities ``w[n_a, n_b]``."""
        return (np.abs(self.amplitudes) ** 2).reshape(2, 2)

    def __repr__(self):
        amps = ", ".join(f"{a:.6g}" for a in self.amplitudes)
        return f"TwoModeState([{amps}])"


def make_raw_state(amps) -> TwoModeState:
    """Normalize an arbitrary 4-vector of amplitudes into a state."""
    arr = _as_finite_complex(amps, (4,))
    norm = np.linalg.norm(arr)
    if norm <= NORM_TOL:
        raise DegenerateState(f"state norm {norm:g} is too small to normalize")
    return TwoModeState(arr / norm)


def make_state(p: Number, q: Number, r: Number) -> TwoModeState:
    """Return ``p|10> + q|01> + r|00>`` renormalized; the ``|11>`` slot is 0.

    ``p`` weights the particle in Alice's beam, ``q`` in Bob's, ``r`` the
    vacuum.
    """
    coeffs = _as_finite_complex([p, q, r], (3,))
    if float(np.sum(np.abs(coeffs) ** 2)) <= NORM_TOL:
        raise DegenerateState("all of p, q, r are (numerically) zero")
    amps = np.zeros(4, dtype=complex)
    amps[basis_index(1, 0)] = coeffs[0]
    amps[basis_index(0, 1)] = coeffs[1]
    amps[basis_index(0, 0)] = coeffs[2]
    return make_raw_state(amps)


def singlet_analog() -> TwoModeState:
    """The one-particle state ``(|10> - |01>) / sqrt(2)``."""
    return make_state(1 / np.sqrt(2), -1 / np.sqrt(2), 0)


def basis_state(n_a: int, n_b: int) -> TwoModeState:
    amps = np.zeros(4, dtype=complex)
    amps[basis_index(n_a, n_b)] = 1
    return TwoModeState(amps)


def product_state(vec_a, vec_b) -> TwoModeState:
    """Tensor product of two single-mode vectors (normalized)."""
    return make_raw_state(np.kron(_as_finite_complex(vec_a, (2,)), _as_finite_complex(vec_b, (2,))))


def inner_product(s: TwoModeState, t: TwoModeState) -> complex:
    """``<s|t>``, conjugate-linear in ``s``."""
    return complex(np.vdot(s.amplitudes, t.amplitudes))


def two_particle_weight(s: TwoModeState) -> float:
    """Probability of finding one particle in each beam, ``|<11|s>|^2``."""
    return float(abs(s.amplitudes[basis_index(1, 1)]) ** 2)


def total_number_expectation(s: TwoModeState) -> float:
    total = np.kron(NUMBER_OP, IDENTITY) + np.kron(IDENTITY, NUMBER_OP)
    return float(np.vdot(s.amplitudes, total @ s.amplitudes).real)
