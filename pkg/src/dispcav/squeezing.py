"""Collective mean spin, the mean-spin frame and the squeezing parameters Sx, Sy.

Frame convention: z' is along <J>; x', y' are the images of x, y under
R_z(phi_m) R_y(theta_m). Smin, the smallest perpendicular spread over all
directions in the x'y' plane, does not depend on that choice.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from typing import Optional, Sequence

import numpy as np

from . import bipartite, kernels, numerics
from .dynamics import CavityParams, effective_hamiltonian, scan_times
from .errors import EmptyGrid, UndefinedFrame
from .spin_model import CoherentPrep, ProductState, coherent_state, collective_product_ops, dicke_to_product

FRAME_THRESHOLD = 1e-9


@functools.lru_cache(maxsize=1)
def _ops() -> np.ndarray:
    return np.array(collective_product_ops())


@functools.lru_cache(maxsize=1)
def _generators():
    jx, jy, jz = collective_product_ops()
    return numerics.herm_eig(jy), numerics.herm_eig(jz)


@dataclasses.dataclass(frozen=True)
class MeanSpin:
    vector: np.ndarray
    magnitude: float
    theta_m: float
    phi_m: float

    @property
    def defined(self) -> bool:
        return self.magnitude >= FRAME_THRESHOLD


@dataclasses.dataclass(frozen=True)
class SqueezingReport:
    magnitude: float
    defined: bool
    dJx_prime: Optional[float] = None
    dJy_prime: Optional[float] = None
    Sx: Optional[float] = None
    Sy: Optional[float] = None
    Smin: Optional[float] = None
    uncertainty_product: Optional[float] = None

    @property
    def bound(self) -> float:
        return self.magnitude / 2


def mean_spin(psi: ProductState) -> MeanSpin:
    ops = _ops()
    vec = np.array([numerics.expectation(psi, op).real for op in ops])
    rho = math.hypot(vec[0], vec[1])
    mag = math.hypot(rho, vec[2])
    theta_m = math.atan2(rho, vec[2])
    phi_m = 0.0 if math.sin(theta_m) < 1e-12 else math.atan2(vec[1], vec[0]) % (2 * math.pi)
    return MeanSpin(vec, mag, theta_m, phi_m)


def _rotation(ms: MeanSpin) -> np.ndarray:
    ey, ez = _generators()

    def expi(eig, angle):
        # exp(+i angle G) for generator G
        v = eig.eigenvectors
        return (v * np.exp(1j * angle * eig.eigenvalues)) @ v.conj().T

    return expi(ey, ms.theta_m) @ expi(ez, ms.phi_m)


def rotate_to_mean_frame(psi: ProductState, ms: MeanSpin | None = None) -> ProductState:
    """Apply exp(+i theta_m Jy) exp(+i phi_m Jz) so the mean spin lies along +z."""
    ms = mean_spin(psi) if ms is None else ms
    if not ms.defined:
        raise UndefinedFrame(f"|<J>| = {ms.magnitude:.3e} is below {FRAME_THRESHOLD:g}")
    return _rotation(ms) @ numerics.as_cvec(psi)


def frame_axes(ms: MeanSpin) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unit vectors x', y', z' of the mean-spin frame in lab coordinates."""
    ct, st = math.cos(ms.theta_m), math.sin(ms.theta_m)
    cp, sp = math.cos(ms.phi_m), math.sin(ms.phi_m)
    return (
        np.array([ct * cp, ct * sp, -st]),
        np.array([-sp, cp, 0.0]),
        np.array([st * cp, st * sp, ct]),
    )


def squeezing_params(psi: ProductState) -> SqueezingReport:
    """Perpendicular spreads and squeezing parameters of a two-atom state.

    The variances are taken of the lab-frame Jx, Jy on the rotated state.
    Returns a report with ``defined=False`` and unset parameters when the mean
    spin is too small to fix a frame.
    """
    ms = mean_spin(psi)
    if not ms.defined:
        return SqueezingReport(magnitude=ms.magnitude, defined=False)
    rotated = rotate_to_mean_frame(psi, ms)
    jx, jy, _ = _ops()

    def moment(a, b):
        return numerics.expectation(rotated, a @ b).real

    mx = numerics.expectation(rotated, jx).real
    my = numerics.expectation(rotated, jy).real
    vxx = max(moment(jx, jx) - mx * mx, 0.0)
    vyy = max(moment(jy, jy) - my * my, 0.0)
    vxy = 0.5 * (moment(jx, jy) + moment(jy, jx)) - mx * my
    vmin = max(0.5 * (vxx + vyy) - math.hypot(0.5 * (vxx - vyy), vxy), 0.0)
    dx, dy = math.sqrt(vxx), math.sqrt(vyy)
    root = math.sqrt(ms.magnitude)
    return SqueezingReport(
        magnitude=ms.magnitude,
        defined=True,
        dJx_prime=dx,
        dJy_prime=dy,
        Sx=math.sqrt(2.0) * dx / root,
        Sy=math.sqrt(2.0) * dy / root,
        Smin=math.sqrt(2.0 * vmin) / root,
        uncertainty_product=dx * dy,
    )


def squeezing_many(psis: np.ndarray) -> dict[str, np.ndarray]:
    """Squeezing diagnostics for every row of ``psis`` through the batch kernels.

    Returns arrays keyed by ``kernels.SQUEEZE_FIELDS``; undefined rows hold NaN.
    """
    psis = np.ascontiguousarray(psis, dtype=np.complex128)
    means, second = kernels.spin_moments(psis, _ops())
    table = kernels.squeezing_from_moments(means, second, FRAME_THRESHOLD)
    out = {name: table[:, i] for i, name in enumerate(kernels.SQUEEZE_FIELDS)}
    out["defined"] = out["defined"].astype(bool)
    return out


@dataclasses.dataclass(frozen=True)
class ScanPoint:
    delta0_t: float
    squeezing: SqueezingReport
    entropy: float


def squeezing_scan(prep: CoherentPrep, params: CavityParams, t_grid: Sequence[float]) -> list[ScanPoint]:
    """Squeezing report and entanglement entropy at each time of ``t_grid`` (seconds)."""
    ts = np.asarray(t_grid, dtype=float).ravel()
    if ts.size == 0:
        raise EmptyGrid("time grid is empty")
    h = effective_hamiltonian(params)
    psis = scan_times(dicke_to_product(coherent_state(prep)), h, ts)
    ent = bipartite.entropies(psis)
    return [ScanPoint(h.delta0 * t, squeezing_params(psi), float(e)) for t, psi, e in zip(ts, psis, ent)]
