import math

import numpy as np
import pytest

from dispcav import dynamics, spin_model


@pytest.fixture(scope="session")
def unit_h():
    return dynamics.effective_hamiltonian(dynamics.CavityParams.unit())


@pytest.fixture
def evolved(unit_h):
    def make(theta, tau, phi=0.0):
        return dynamics.evolve(spin_model.initial_product_state(theta, phi), unit_h, tau)

    return make


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


PI = math.pi
