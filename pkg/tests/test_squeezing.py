import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dispcav import bipartite, dynamics, spin_model, squeezing as sq
from dispcav.dynamics import CavityParams
from dispcav.errors import EmptyGrid, UndefinedFrame
from dispcav.spin_model import CoherentPrep

PI = math.pi
FIG3_THETAS = (PI / 6, PI / 3, 2 * PI / 3)


def test_mean_spin_examples(evolved):
    top = sq.mean_spin(evolved(0.0, 0.0))
    assert np.allclose(top.vector, [0, 0, 1]) and top.magnitude == pytest.approx(1.0)
    assert np.allclose(sq.mean_spin(evolved(PI / 2, 0.0)).vector, [1, 0, 0], atol=1e-15)
    assert sq.mean_spin(evolved(PI / 2, PI / 2)).magnitude < 1e-15


def test_mean_spin_angles_convention():
    ms = sq.mean_spin(spin_model.initial_product_state(2.0, 5.0))
    assert ms.theta_m == pytest.approx(2.0, abs=1e-12)
    assert ms.phi_m == pytest.approx(5.0, abs=1e-12)
    assert sq.mean_spin(spin_model.initial_product_state(0.0, 1.0)).phi_m == 0.0


def test_rotation_identity_when_already_along_z():
    psi = spin_model.initial_product_state(0.0)
    rotated = sq.rotate_to_mean_frame(psi)
    assert abs(abs(np.vdot(psi, rotated)) - 1) < 1e-14


@settings(max_examples=100, deadline=None)
@given(theta=st.floats(0, PI), phi=st.floats(0, 2 * PI))
def test_rotation_of_coherent_state_to_pole(theta, phi):
    rotated = sq.rotate_to_mean_frame(spin_model.initial_product_state(theta, phi))
    assert np.allclose(sq.mean_spin(rotated).vector, [0, 0, 1], atol=1e-10)


def test_rotation_undefined_at_zero_mean_spin(evolved):
    with pytest.raises(UndefinedFrame):
        sq.rotate_to_mean_frame(evolved(PI / 2, PI / 2))
    rep = sq.squeezing_params(evolved(PI / 2, PI / 2))
    assert not rep.defined and rep.Sx is None and rep.Sy is None


@pytest.mark.parametrize("theta", [0.1, 0.7, PI / 2, 2.4, 3.1])
def test_coherent_state_is_minimum_uncertainty(theta):
    rep = sq.squeezing_params(spin_model.initial_product_state(theta, 0.3))
    assert rep.Sx == pytest.approx(1.0, abs=1e-10)
    assert rep.Sy == pytest.approx(1.0, abs=1e-10)
    assert rep.uncertainty_product == pytest.approx(0.5, abs=1e-10)
    assert rep.bound == pytest.approx(0.5, abs=1e-12)


def test_short_time_point_at_pi3(evolved):
    rep = sq.squeezing_params(evolved(PI / 3, 0.3))
    # in the fixed x'/y' frame Sx has not yet dipped at delta0 t = 0.3; the
    # convention-free minimum already has
    assert rep.Smin < 1 < rep.Sy
    assert rep.Sx > 1
    late = sq.squeezing_params(evolved(PI / 3, PI / 2))
    assert late.Sx < 1 < late.Sy


def test_rotated_variances_equal_rotated_operators(evolved):
    psi = evolved(1.0, 0.8, phi=0.6)
    ms = sq.mean_spin(psi)
    xp, yp, zp = sq.frame_axes(ms)
    assert np.allclose(zp, ms.vector / ms.magnitude, atol=1e-12)
    jx, jy, jz = spin_model.collective_product_ops()

    def spread(n):
        op = n[0] * jx + n[1] * jy + n[2] * jz
        m = np.vdot(psi, op @ psi).real
        return math.sqrt(np.vdot(psi, op @ op @ psi).real - m * m)

    rep = sq.squeezing_params(psi)
    assert rep.dJx_prime == pytest.approx(spread(xp), abs=1e-12)
    assert rep.dJy_prime == pytest.approx(spread(yp), abs=1e-12)


def _transverse_variance(rotated, alphas):
    jx, jy, _ = spin_model.collective_product_ops()
    out = []
    for a in alphas:
        op = math.cos(a) * jx + math.sin(a) * jy
        m = np.vdot(rotated, op @ rotated).real
        out.append(np.vdot(rotated, op @ op @ rotated).real - m * m)
    return np.array(out)


@pytest.mark.parametrize("theta,tau", [(PI / 3, 0.3), (PI / 6, 1.4), (2.2, 2.5)])
def test_smin_matches_exhaustive_angle_search(evolved, theta, tau):
    psi = evolved(theta, tau, phi=0.4)
    rep = sq.squeezing_params(psi)
    rotated = sq.rotate_to_mean_frame(psi)
    step = 2 * PI / 3600
    coarse = _transverse_variance(rotated, np.arange(3600) * step)
    v_min = rep.Smin**2 * rep.magnitude / 2
    # V(alpha) = A + B cos 2(alpha - alpha0): a grid with this spacing can miss by 2 B sin^2(step / 2)
    half_range = 0.5 * (coarse.max() - coarse.min())
    assert -1e-14 <= coarse.min() - v_min <= 2 * half_range * math.sin(step / 2) ** 2 + 1e-14
    best = np.argmin(coarse) * step
    fine = _transverse_variance(rotated, best + np.linspace(-step, step, 3601))
    s_fine = math.sqrt(2 * fine.min() / rep.magnitude)
    assert abs(rep.Smin - s_fine) < 1e-8
    assert rep.Smin <= min(rep.Sx, rep.Sy) + 1e-12


@settings(max_examples=100, deadline=None)
@given(theta=st.floats(0.01, PI - 0.01), tau=st.floats(0, 2 * PI), phi=st.floats(0, 2 * PI))
def test_heisenberg_bound_and_frame(theta, tau, phi):
    h = dynamics.effective_hamiltonian(CavityParams.unit())
    psi = dynamics.evolve(spin_model.initial_product_state(theta, phi), h, tau)
    rep = sq.squeezing_params(psi)
    if not rep.defined:
        return
    assert rep.uncertainty_product >= rep.bound - 1e-12
    rotated = sq.mean_spin(sq.rotate_to_mean_frame(psi)).vector
    assert abs(rotated[0]) <= 1e-10 and abs(rotated[1]) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(theta=st.floats(0.01, PI - 0.01), tau=st.floats(0, 2 * PI), nbar=st.sampled_from([0.5, 1.0, 3.0]))
def test_thermal_invariance_of_squeezing(theta, tau, nbar):
    psi0 = spin_model.initial_product_state(theta)
    cold = sq.squeezing_params(dynamics.evolve(psi0, dynamics.effective_hamiltonian(CavityParams.unit()), tau))
    hot = sq.squeezing_params(
        dynamics.evolve(psi0, dynamics.effective_hamiltonian(CavityParams.unit(nbar=nbar)), tau)
    )
    if not cold.defined:
        return
    for field in ("Sx", "Sy", "Smin"):
        assert abs(getattr(cold, field) - getattr(hot, field)) < 1e-10


def test_batch_path_matches_scalar_path(unit_h):
    psis = dynamics.scan_times(spin_model.initial_product_state(0.8, 1.3), unit_h, np.linspace(0, 3, 31))
    batch = sq.squeezing_many(psis)
    for i, psi in enumerate(psis):
        rep = sq.squeezing_params(psi)
        assert batch["defined"][i] == rep.defined
        for key, attr in [("Sx", "Sx"), ("Sy", "Sy"), ("Smin", "Smin"), ("product", "uncertainty_product")]:
            assert abs(batch[key][i] - getattr(rep, attr)) < 1e-12


def test_scan_first_point_and_empty_grid():
    pts = sq.squeezing_scan(CoherentPrep(1, PI / 3), CavityParams.unit(), [0.0])
    assert pts[0].squeezing.Sx == pytest.approx(1.0, abs=1e-10)
    assert pts[0].squeezing.Sy == pytest.approx(1.0, abs=1e-10)
    assert pts[0].entropy == 0.0
    with pytest.raises(EmptyGrid):
        sq.squeezing_scan(CoherentPrep(1, PI / 3), CavityParams.unit(), [])


def test_scan_reports_dimensionless_time():
    p = CavityParams(1.0, 10.0, 1.0)
    ts = np.array([0.0, 1.0, 2.0]) / p.delta0
    pts = sq.squeezing_scan(CoherentPrep(1, 0.5), p, ts)
    assert [pt.delta0_t for pt in pts] == pytest.approx([0.0, 1.0, 2.0], abs=1e-12)


@pytest.mark.parametrize("theta", FIG3_THETAS)
def test_scan_qualitative_pattern(theta):
    grid = np.linspace(0, PI, 401)
    pts = sq.squeezing_scan(CoherentPrep(1, theta), CavityParams.unit(), grid)
    sx = np.array([p.squeezing.Sx for p in pts])
    sy = np.array([p.squeezing.Sy for p in pts])
    ent = np.array([p.entropy for p in pts])
    assert sx.min() < 1
    assert np.all(sy >= 1 - 1e-10)
    assert np.argmax(sy) == np.argmax(ent)
    assert ent == pytest.approx(bipartite.entropy_closed(theta, grid), abs=1e-10)
