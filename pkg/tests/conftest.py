import math

import numpy as np
import pytest

from fockbell.fock import make_raw_state, singlet_analog


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=0, help="seed for the random property suites")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return np.random.default_rng(seed)


@pytest.fixture
def singlet():
    return singlet_analog()


def random_amplitudes(rng, size=4):
    v = rng.normal(size=size) + 1j * rng.normal(size=size)
    return v / np.linalg.norm(v)


def random_state(rng):
    return make_raw_state(random_amplitudes(rng))


def random_angles(rng):
    """(theta, phi) uniformly within the legal setting ranges."""
    return rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi)
