import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dispcav import bipartite as bp
from dispcav.errors import InvalidDensity, OutOfRange

PI = math.pi
# frozen from 30-digit mpmath evaluation of the binary entropy
H_QUARTER = 0.811278124459132863909695792039
E_PI6_HALF = 0.117618873770917911667680827942
E_2PI3_HALF = 0.656057562972714689445258048494


def test_density_examples(evolved):
    assert np.array_equal(bp.density([1, 0, 0, 0]), np.diag([1, 0, 0, 0]))
    assert np.allclose(bp.density(np.full(4, 0.5)), np.full((4, 4), 0.25))
    psi = evolved(PI / 2, PI / 2)
    rho = bp.density(psi)
    assert np.allclose(np.abs(rho), 0.25, atol=1e-15)
    assert np.allclose(rho, np.outer(psi, psi.conj()))


def test_partial_trace_examples(evolved):
    assert np.array_equal(bp.partial_trace(np.diag([1, 0, 0, 0]).astype(complex), "A"), np.diag([1, 0]))
    rho_a = bp.partial_trace(bp.density(evolved(PI / 2, PI / 2)), "A")
    assert np.max(np.abs(rho_a - np.eye(2) / 2)) < 1e-15


def test_partial_trace_rejects_invalid():
    with pytest.raises(InvalidDensity):
        bp.partial_trace(np.diag([1.0, 1.0, 0, 0]))
    with pytest.raises(InvalidDensity):
        bp.partial_trace(np.diag([1.5, -0.5, 0, 0]))


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_reductions_share_spectrum(seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = bp.density(psi / np.linalg.norm(psi))
    la = np.linalg.eigvalsh(bp.partial_trace(rho, "A"))
    lb = np.linalg.eigvalsh(bp.partial_trace(rho, "B"))
    assert np.allclose(la, lb, atol=1e-12)


def test_bloch_examples(evolved):
    mixed = bp.bloch_decompose(np.eye(4) / 4)
    assert np.allclose(mixed.u, 0) and np.allclose(mixed.v, 0) and np.allclose(mixed.beta, 0)
    up = bp.bloch_decompose(np.diag([1, 0, 0, 0]).astype(complex))
    assert np.allclose(up.u, [0, 0, 1]) and np.allclose(up.v, [0, 0, 1])
    assert np.allclose(up.beta, np.diag([0, 0, 1]))
    eq = bp.bloch_decompose(bp.density(evolved(PI / 2, 0.0)))
    assert np.allclose(eq.u, [1, 0, 0], atol=1e-15) and np.allclose(eq.v, [1, 0, 0], atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_bloch_reconstruction_and_pure_norms(seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    rho = bp.density(psi / np.linalg.norm(psi))
    dec = bp.bloch_decompose(rho)
    assert np.max(np.abs(dec.reconstruct() - rho)) < 1e-12
    assert np.linalg.norm(dec.u) <= 1 + 1e-12
    assert abs(np.linalg.norm(dec.u) - np.linalg.norm(dec.v)) < 1e-10


def test_entropy_numeric_examples():
    assert bp.entropy_numeric(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-15)
    assert bp.entropy_numeric(np.diag([1.0, 0.0])) == 0.0
    assert bp.entropy_numeric(np.diag([0.98412, 0.01588])) == pytest.approx(0.1176, abs=5e-5)


def test_entropy_numeric_clamps_roundoff_but_rejects_negatives():
    assert bp.entropy_numeric(np.diag([1 + 5e-13, -5e-13])) == 0.0
    with pytest.raises(InvalidDensity):
        bp.entropy_numeric(np.diag([1.01, -0.01]))


def test_binary_entropy():
    assert bp.binary_entropy(0.5) == 1.0
    assert bp.binary_entropy(0.0) == 0.0 and bp.binary_entropy(1.0) == 0.0
    assert bp.binary_entropy(0.25) == pytest.approx(H_QUARTER, abs=1e-15)
    with pytest.raises(OutOfRange):
        bp.binary_entropy(1.5)


def test_concurrence_examples(evolved):
    assert bp.concurrence_pure(evolved(0.8, 0.0)) < 1e-15
    assert bp.concurrence_pure(evolved(PI / 2, PI / 2)) == pytest.approx(1.0, abs=1e-14)
    assert bp.concurrence_pure(evolved(2 * PI / 3, PI / 2)) == pytest.approx(0.75, abs=1e-14)


def test_eof_examples():
    assert bp.eof(0.0) == 0.0
    assert bp.eof(1.0) == 1.0
    assert bp.eof(0.75) == pytest.approx(E_2PI3_HALF, abs=1e-14)
    with pytest.raises(OutOfRange):
        bp.eof(-0.1)


def test_mean_spin_closed_examples():
    assert bp.mean_spin_mag_closed(1.234, 0.0) == 0.5
    assert bp.mean_spin_mag_closed(PI / 2, PI / 2) < 1e-16
    assert bp.mean_spin_mag_closed(PI / 2, PI / 4) == pytest.approx(0.5 * math.sqrt(0.5), abs=1e-15)


def test_mean_spin_closed_against_brute_force(evolved):
    psi = evolved(PI / 2, PI / 4)
    half_u = 0.5 * np.linalg.norm(bp.bloch_decompose(bp.density(psi)).u)
    assert abs(half_u - bp.mean_spin_mag_closed(PI / 2, PI / 4)) < 1e-12


def test_entropy_closed_examples():
    assert bp.entropy_closed(PI / 2, PI / 2) == pytest.approx(1.0, abs=1e-15)
    for theta in (0.2, PI / 3, 2.9):
        for n in range(4):
            assert bp.entropy_closed(theta, n * PI) < 1e-12
    assert bp.entropy_closed(2 * PI / 3, PI / 2) == pytest.approx(E_2PI3_HALF, abs=1e-14)
    assert bp.entropy_closed(PI / 6, PI / 2) == pytest.approx(E_PI6_HALF, abs=1e-14)


def test_entropy_closed_agrees_with_eof_route():
    assert abs(bp.entropy_closed(2 * PI / 3, PI / 2) - bp.eof(0.75)) < 1e-14


def test_entropy_routes_bloch_norm_and_mean_spin_coincide(evolved):
    for theta, tau in [(0.3, 0.4), (PI / 2, 1.1), (2.5, 2.0)]:
        psi = evolved(theta, tau)
        u = np.linalg.norm(bp.bloch_decompose(bp.density(psi)).u)
        a = bp.entropy_from_bloch_norm(u)
        b = bp.entropy_from_mean_spin(0.5 * u)
        assert abs(a - b) < 1e-15
        assert abs(a - bp.entropy_of_state(psi)) < 1e-10


def test_entropy_closed_vectorised_matches_scalar():
    th, tau = np.meshgrid(np.linspace(0, PI, 7), np.linspace(0, 2 * PI, 5))
    grid = bp.entropy_closed(th, tau)
    assert grid.shape == th.shape
    assert grid[2, 3] == bp.entropy_closed(th[2, 3], tau[2, 3])


def test_probabilities_table_rows():
    assert np.allclose(bp.probabilities(PI / 2), [0.25] * 4, atol=1e-15)
    assert np.allclose(bp.probabilities(PI / 6), [0.87, 0.0625, 0.0625, 0.00448], atol=5e-3)
    assert np.allclose(bp.probabilities(2 * PI / 3), [0.0625, 0.1875, 0.1875, 0.5625], atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(theta=st.floats(0, PI))
def test_probabilities_sum_to_one(theta):
    assert abs(sum(bp.probabilities(theta)) - 1) < 1e-12


def test_probabilities_are_time_independent(evolved):
    for tau in np.linspace(0, 6, 13):
        assert np.allclose(np.abs(evolved(0.9, tau)) ** 2, bp.probabilities(0.9), atol=1e-12)


def test_max_entanglement_times():
    assert bp.max_entanglement_times(0) == [PI / 2]
    assert np.allclose(bp.max_entanglement_times(2), [PI / 2, 3 * PI / 2, 5 * PI / 2])
    taus = np.linspace(0, 4 * PI, 10_000)
    curve = bp.entropy_closed(PI / 3, taus)
    for t_star in bp.max_entanglement_times(3):
        assert bp.entropy_closed(PI / 3, t_star) >= curve.max() - 1e-15


@settings(max_examples=200, deadline=None)
@given(theta=st.floats(0, PI), x=st.floats(-50, 50))
def test_entropy_closed_period_pi(theta, x):
    assert abs(bp.entropy_closed(theta, x) - bp.entropy_closed(theta, x + PI)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, _ = np.linalg.qr(z)
    for local in (np.kron(q, np.eye(2)), np.kron(np.eye(2), q)):
        assert abs(bp.entropy_of_state(local @ psi) - bp.entropy_of_state(psi)) < 1e-10


def test_entanglement_report_fields(evolved):
    rep = bp.entanglement_report(evolved(PI / 6, PI / 2), PI / 6, PI / 2)
    assert rep.entropy_numeric == pytest.approx(E_PI6_HALF, abs=1e-12)
    assert abs(rep.entropy_numeric - rep.entropy_closed) < 1e-10
    assert abs(rep.eof - rep.entropy_numeric) < 1e-10
    assert abs(sum(rep.probabilities) - 1) < 1e-12
    assert rep.mean_spin_mag == pytest.approx(bp.mean_spin_mag_closed(PI / 6, PI / 2), abs=1e-12)
