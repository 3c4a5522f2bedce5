import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockbell.errors import DegenerateState
from fockbell.fock import (
    TwoModeState,
    basis_state,
    inner_product,
    make_raw_state,
    make_state,
    singlet_analog,
    total_number_expectation,
    two_particle_weight,
)
from fockbell.measurements import ALICE_PRIME, post_measurement_state

R2 = 1 / math.sqrt(2)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
# scaling subnormals by 2**k drops bits, so keep magnitudes well above them
normal = st.just(0.0) | st.floats(1e-100, 10) | st.floats(-10, -1e-100)
normal_complexes = st.builds(complex, normal, normal)


@pytest.mark.parametrize(
    "pqr, expected",
    [
        ((R2, -R2, 0), [0, -R2, R2, 0]),
        ((1, 0, 0), [0, 0, 1, 0]),
        ((2, 0, 0), [0, 0, 1, 0]),
    ],
)
def test_make_state_examples(pqr, expected):
    np.testing.assert_allclose(make_state(*pqr).amplitudes, expected, atol=1e-12, rtol=0)


def test_make_state_rejects_zero():
    with pytest.raises(DegenerateState):
        make_state(0, 0, 0)
    with pytest.raises(DegenerateState):
        make_state(1e-7, 0, 0)


@pytest.mark.parametrize("bad", [math.nan, math.inf, complex(0, math.inf)])
def test_non_finite_rejected(bad):
    with pytest.raises(ValueError):
        make_state(bad, 1, 0)
    with pytest.raises(ValueError):
        make_raw_state([bad, 1, 0, 0])


def test_make_state_leaves_11_empty():
    s = make_state(0.3 + 0.1j, -0.7, 0.2j)
    assert s.amplitudes[3] == 0
    assert s[1, 0] == pytest.approx(s.amplitudes[2])


def test_raw_state_examples():
    np.testing.assert_allclose(make_raw_state([0, 0, 0, 1]).amplitudes, [0, 0, 0, 1])
    np.testing.assert_allclose(make_raw_state([1, 1, 1, 1]).amplitudes, [0.5] * 4, atol=1e-15)
    ray = make_raw_state(np.array([0, -1, 1, 0]) * 7.3)
    np.testing.assert_allclose(ray.amplitudes, make_state(R2, -R2, 0).amplitudes, atol=1e-12)
    with pytest.raises(DegenerateState):
        make_raw_state([1e-13, 0, 0, 0])


def test_state_is_immutable():
    s = singlet_analog()
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1
    with pytest.raises(ValueError):
        TwoModeState(np.array([1, 1, 0, 0]))


def test_inner_product_examples(singlet):
    assert inner_product(singlet, singlet) == pytest.approx(1, abs=1e-12)
    assert inner_product(basis_state(1, 0), basis_state(0, 1)) == 0
    assert inner_product(basis_state(1, 0), singlet) == pytest.approx(R2, abs=1e-12)


def test_inner_product_conjugate_linear_in_first():
    s = make_raw_state([1j, 0, 0, 0])
    t = basis_state(0, 0)
    assert inner_product(s, t) == pytest.approx(-1j)


def test_two_particle_weight_examples(singlet):
    assert two_particle_weight(singlet) == 0
    assert two_particle_weight(basis_state(1, 1)) == 1
    # (P_a' x I)|psi> = |a'> x (1/2|0> - sqrt3/2|1>)/sqrt2; |11> amplitude of
    # the normalized state is (1/2)(-sqrt3/2)
    collapsed, _ = post_measurement_state(singlet, "A", ALICE_PRIME, 1)
    assert two_particle_weight(collapsed) == pytest.approx(3 / 16, abs=1e-12)


def test_two_particle_weight_brute_force(singlet):
    a_prime = np.array([math.sqrt(3) / 2, 0.5])
    op = np.kron(np.outer(a_prime, a_prime), np.eye(2))
    v = op @ singlet.amplitudes
    v = v / np.linalg.norm(v)
    assert abs(v[3]) ** 2 == pytest.approx(3 / 16, abs=1e-12)


def test_total_number_examples(singlet):
    assert total_number_expectation(singlet) == pytest.approx(1, abs=1e-12)
    assert total_number_expectation(basis_state(1, 1)) == pytest.approx(2)
    assert total_number_expectation(basis_state(0, 0)) == 0


@given(st.lists(complexes, min_size=4, max_size=4))
def test_normalization_and_number_decomposition(amps):
    try:
        s = make_raw_state(amps)
    except DegenerateState:
        return
    assert abs(np.sum(np.abs(s.amplitudes) ** 2) - 1) <= 1e-12
    ip = inner_product(s, s)
    assert abs(ip.imag) <= 1e-12 and abs(ip.real - 1) <= 1e-12
    w = s.probabilities()
    assert total_number_expectation(s) == pytest.approx(w[0, 1] + w[1, 0] + 2 * w[1, 1], abs=1e-12)


@given(complexes, complexes, complexes, complexes)
def test_make_state_ray_invariance(p, q, r, scale):
    if abs(scale) < 1e-3 or abs(p) ** 2 + abs(q) ** 2 + abs(r) ** 2 < 1e-6:
        return
    s = make_state(p, q, r)
    t = make_state(scale * p, scale * q, scale * r)
    assert abs(abs(inner_product(s, t)) - 1) <= 1e-12


@given(normal_complexes, normal_complexes, normal_complexes, st.integers(-20, 20))
def test_power_of_two_scaling_is_bit_exact(p, q, r, k):
    if (abs(p) ** 2 + abs(q) ** 2 + abs(r) ** 2) * min(1.0, 4.0**k) < 1e-6:
        return
    s = make_state(p, q, r)
    t = make_state(p * 2.0**k, q * 2.0**k, r * 2.0**k)
    assert np.array_equal(s.amplitudes, t.amplitudes)
