"""Single-particle nonlocality in a two-mode Fock space."""

__version__ = "0.1.0"

from .bell import (
    ChResult,
    ChSettings,
    Classification,
    DeterministicStrategy,
    ch_value,
    classify,
    deterministic_ch_value,
    lhv_bounds,
    reference_settings,
)
from .errors import BadGrid, DegenerateState, NonHermitianOperator, ZeroProbabilityOutcome
from .fock import (
    TwoModeState,
    basis_state,
    inner_product,
    make_raw_state,
    make_state,
    singlet_analog,
    total_number_expectation,
    two_particle_weight,
)
from .measurements import (
    MeasurementSetting,
    commutator_norm,
    expectation,
    joint_distribution,
    mode_projector,
    post_measurement_state,
)
from .optimize import SearchOptions, SweepGrid, minimize_ch, sweep_settings, sweep_state
