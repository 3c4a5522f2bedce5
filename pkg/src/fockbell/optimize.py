"""Grid sweeps and derivative-free search for CH violations."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .bell import ChSettings, ch_value, ch_values, classify, reference_settings
from .errors import BadGrid
from .fock import NORM_TOL, TwoModeState, make_state
from .measurements import mode_vectors

SETTING_PARAMS = ("theta_a", "phi_a", "theta_ap", "phi_ap", "theta_b", "phi_b", "theta_bp", "phi_bp")
STATE_PARAMS = ("p", "q", "r")
DEGENERATE = "DEGENERATE"
_RANGE_TOL = 1e-12


def legal_range(name: str) -> tuple[float, float]:
    if name.startswith("theta"):
        return 0.0, math.pi / 2
    if name.startswith("phi"):
        return 0.0, 2 * math.pi
    if name in STATE_PARAMS:
        return -math.inf, math.inf
    raise BadGrid(f"unknown parameter {name!r}")


@dataclass(frozen=True)
class Axis:
    """``steps`` evenly spaced values from ``lower`` to ``upper`` inclusive.

    A single-step axis must have ``lower == upper`` and pins the parameter.
    """

    name: str
    lower: float
    upper: float
    steps: int

    def __post_init__(self):
        lo, hi = legal_range(self.name)
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise BadGrid(f"{self.name}: bounds must be finite")
        if self.lower > self.upper:
            raise BadGrid(f"{self.name}: lower bound exceeds upper bound")
        if self.lower < lo - _RANGE_TOL or self.upper > hi + _RANGE_TOL:
            raise BadGrid(f"{self.name}: [{self.lower}, {self.upper}] outside legal range [{lo}, {hi}]")
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 1:
            raise BadGrid(f"{self.name}: steps must be a positive integer")
        if self.steps == 1 and self.lower != self.upper:
            raise BadGrid(f"{self.name}: need at least 2 steps for a non-degenerate range")

    def values(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.steps)


@dataclass(frozen=True)
class SweepGrid:
    axes: tuple[Axis, ...]

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if not self.axes:
            raise BadGrid("grid has no axes")
        names = self.names
        if len(set(names)) != len(names):
            raise BadGrid(f"duplicate axes in {names}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(ax.name for ax in self.axes)

    def __len__(self):
        return math.prod(ax.steps for ax in self.axes)

    def points(self):
        """Grid points in row-major order over the axis declaration order."""
        return itertools.product(*(ax.values() for ax in self.axes))


@dataclass(frozen=True)
class SweepRecord:
    params: tuple[tuple[str, float], ...]
    ch_value: float
    classification: str
    # normalized (p, q, r) for state sweeps
    coefficients: tuple[complex, complex, complex] | None = None


def _require(grid: SweepGrid, allowed: tuple[str, ...]):
    bad = [n for n in grid.names if n not in allowed]
    if bad:
        raise BadGrid(f"axes {bad} cannot be swept here; allowed: {allowed}")


def sweep_settings(s: TwoModeState, grid: SweepGrid, base: ChSettings | None = None) -> list[SweepRecord]:
    """Evaluate the CH value over a Cartesian grid of measurement angles.

    Angles not on the grid are taken from ``base`` (the reference settings by
    default).
    """
    _require(grid, SETTING_PARAMS)
    base_angles = dict(zip(SETTING_PARAMS, (base or reference_settings()).angles()))
    mesh = np.meshgrid(*(ax.values() for ax in grid.axes), indexing="ij")
    swept = {name: m.ravel() for name, m in zip(grid.names, mesh)}
    args = [swept.get(name, base_angles[name]) for name in SETTING_PARAMS]
    values = np.broadcast_to(ch_values(s, *args), (len(grid),))

    records = []
    for k, value in enumerate(values):
        value = float(value)
        params = tuple((name, float(swept[name][k])) for name in grid.names)
        records.append(SweepRecord(params, value, classify(value).classification.value))
    return records


def sweep_state(c: ChSettings, grid: SweepGrid, base=(1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)) -> list[SweepRecord]:
    """Evaluate the CH value at fixed settings across ``p|10> + q|01> + r|00>``.

    Coefficients not on the grid come from ``base``. Points where every
    coefficient vanishes produce a ``DEGENERATE`` record with a NaN value.
    """
    _require(grid, STATE_PARAMS)
    records = []
    for point in grid.points():
        coeffs = dict(zip(STATE_PARAMS, base))
        coeffs.update(zip(grid.names, map(float, point)))
        pqr = [coeffs[n] for n in STATE_PARAMS]
        params = tuple(zip(grid.names, map(float, point)))
        if sum(abs(x) ** 2 for x in pqr) <= NORM_TOL:
            records.append(SweepRecord(params, math.nan, DEGENERATE))
            continue
        state = make_state(*pqr)
        amps = state.amplitudes
        normalized = (complex(amps[2]), complex(amps[1]), complex(amps[0]))
        value = ch_value(state, c)
        records.append(SweepRecord(params, value, classify(value).classification.value, normalized))
    return records


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for :func:`minimize_ch`.

    ``box`` maps setting parameters to ``(lower, upper)``; equal bounds pin a
    parameter; ``axis_points`` overrides ``grid_points`` for individual boxed
    axes. ``full_phase`` scans and refines the phase angles too; otherwise
    phases are restricted to {0, pi}.
    """

    grid_points: int = 24
    iterations: int = 200
    initial_step: float = 0.1
    shrink: float = 0.5
    tol: float = 1e-10
    full_phase: bool = False
    box: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    axis_points: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.grid_points < 1 or self.iterations < 1:
            raise ValueError("grid_points and iterations must be positive")
        if not (self.initial_step > 0 and self.tol > 0):
            raise ValueError("initial_step and tol must be positive")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        for name, (lo, hi) in self.box.items():
            if name not in SETTING_PARAMS:
                raise BadGrid(f"cannot constrain {name!r} in a settings search")
            Axis(name, float(lo), float(hi), 1 if lo == hi else 2)
        for name, n in self.axis_points.items():
            if name not in self.box or n < 1:
                raise BadGrid(f"resolution for {name!r} needs a boxed axis and a positive count")

    def bounds(self, name: str) -> tuple[float, float]:
        if name in self.box:
            lo, hi = self.box[name]
            return float(lo), float(hi)
        return legal_range(name)

    def free(self, name: str) -> bool:
        lo, hi = self.bounds(name)
        if lo == hi:
            return False
        return self.full_phase or name.startswith("theta") or name in self.box

    def axis_values(self, name: str) -> np.ndarray:
        lo, hi = self.bounds(name)
        if lo == hi:
            return np.array([lo])
        if name in self.box:
            return np.linspace(lo, hi, self.axis_points.get(name, self.grid_points))
        if name.startswith("theta"):
            return np.linspace(lo, hi, self.grid_points)
        if self.full_phase:
            return np.arange(self.grid_points) * (2 * math.pi / self.grid_points)
        return np.array([0.0, math.pi])


def pinned_box(c: ChSettings) -> dict[str, tuple[float, float]]:
    return {name: (x, x) for name, x in zip(SETTING_PARAMS, c.angles())}


@dataclass(frozen=True)
class SearchResult:
    settings: ChSettings
    value: float
    grid_value: float
    evaluations: int


def _side_grid(opts: SearchOptions, theta_name: str, phi_name: str):
    thetas, phis = opts.axis_values(theta_name), opts.axis_values(phi_name)
    pts = np.array(list(itertools.product(thetas, phis)))
    return pts, mode_vectors(pts[:, 0], pts[:, 1])


def _coarse_scan(s: TwoModeState, opts: SearchOptions):
    """Exhaustive scan of the 8-angle grid; first row-major minimum wins.

    The CH value splits as A'(a') + g(a, a', b) + f(a, a', b'), so for each
    Alice pair the Bob minimizations are independent.
    """
    psi = s.amplitudes.reshape(2, 2)
    pts_a, u = _side_grid(opts, "theta_a", "phi_a")
    pts_ap, up = _side_grid(opts, "theta_ap", "phi_ap")
    pts_b, v = _side_grid(opts, "theta_b", "phi_b")
    pts_bp, vp = _side_grid(opts, "theta_bp", "phi_bp")

    def joint(x, y):
        amp = np.einsum("mi,ij,nj->mn", x.conj(), psi, y.conj())
        return amp.real**2 + amp.imag**2

    alice_fire = np.sum(np.abs(up.conj() @ psi) ** 2, axis=1)
    bob_fire = np.sum(np.abs(vp.conj() @ psi.T) ** 2, axis=1)
    j_apbp, j_apb = joint(up, vp), joint(up, v)
    j_abp, j_ab = joint(u, vp), joint(u, v)

    best = (math.inf, None)
    for ia in range(len(pts_a)):
        g = j_ab[ia][None, :] - j_apb  # (a', b)
        f = bob_fire[None, :] - j_apbp - j_abp[ia][None, :]  # (a', b')
        ib, ibp = np.argmin(g, axis=1), np.argmin(f, axis=1)
        rows = np.arange(len(pts_ap))
        totals = alice_fire + g[rows, ib] + f[rows, ibp]
        iap = int(np.argmin(totals))
        if totals[iap] < best[0]:
            best = (float(totals[iap]), (ia, iap, int(ib[iap]), int(ibp[iap])))
    ia, iap, ib, ibp = best[1]
    angles = np.concatenate([pts_a[ia], pts_ap[iap], pts_b[ib], pts_bp[ibp]])
    count = len(pts_a) * len(pts_ap) * len(pts_b) * len(pts_bp)
    return [float(x) for x in angles], count


def minimize_ch(s: TwoModeState, opts: SearchOptions | None = None) -> SearchResult:
    """Search measurement settings that minimize the CH value for ``s``.

    A coarse exhaustive grid scan is followed by cyclic coordinate descent
    with geometrically shrinking steps, clamped to the search box.
    """
    opts = opts or SearchOptions()
    x, evaluations = _coarse_scan(s, opts)

    def evaluate(angles):
        return ch_value(s, ChSettings.from_angles(angles))

    value = grid_value = evaluate(x)
    evaluations += 1
    free = [k for k, name in enumerate(SETTING_PARAMS) if opts.free(name)]
    bounds = [opts.bounds(name) for name in SETTING_PARAMS]
    step = opts.initial_step
    for _ in range(opts.iterations if free else 0):
        gained = 0.0
        for k in free:
            lo, hi = bounds[k]
            for direction in (1.0, -1.0):
                trial = min(hi, max(lo, x[k] + direction * step))
                if trial == x[k]:
                    continue
                candidate = x.copy()
                candidate[k] = trial
                v = evaluate(candidate)
                evaluations += 1
                if v < value:
                    gained += value - v
                    x, value = candidate, v
                    break
        if gained <= opts.tol:
            step *= opts.shrink
            if step <= opts.tol:
                break
    return SearchResult(ChSettings.from_angles(x), value, grid_value, evaluations)
