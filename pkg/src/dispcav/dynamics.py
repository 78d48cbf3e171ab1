"""Dispersive coupling, the effective two-atom Hamiltonian and its exact propagator."""

from __future__ import annotations

import dataclasses
import functools
import math
from typing import Sequence

import numpy as np

from . import kernels, numerics
from .errors import DegenerateCavity, EmptyGrid
from .spin_model import ProductState, collective_product_ops


@dataclasses.dataclass(frozen=True)
class CavityParams:
    """Cavity coupling ``g``, detuning ``delta``, bandwidth ``k`` (rad/s) and thermal ``nbar``.

    ``dispersive`` records whether |i delta + k| > 10 g sqrt(2); it is a flag,
    never a reason to reject the parameters.
    """

    g: float
    delta: float
    k: float
    nbar: float = 0.0
    dispersive: bool = dataclasses.field(init=False)

    def __post_init__(self):
        if self.nbar < 0:
            raise ValueError(f"nbar must be non-negative, got {self.nbar}")
        ok = math.hypot(self.delta, self.k) > 10.0 * abs(self.g) * math.sqrt(2.0)
        object.__setattr__(self, "dispersive", ok)

    @classmethod
    def unit(cls, nbar: float = 0.0) -> "CavityParams":
        """Parameters with delta0 = 1, so that t is already the dimensionless delta0*t."""
        return cls(g=1.0, delta=1.0, k=0.0, nbar=nbar)

    @property
    def delta0(self) -> float:
        return delta0(self)


def delta0(p: CavityParams) -> float:
    den = p.k**2 + p.delta**2
    if den == 0.0:
        raise DegenerateCavity("k = delta = 0 leaves the dispersive coupling undefined")
    return p.g**2 * p.delta / den


@dataclasses.dataclass(frozen=True)
class EffectiveH:
    matrix: np.ndarray
    delta0: float

    @functools.cached_property
    def eig(self) -> numerics.HermEig:
        return numerics.herm_eig(self.matrix)


@functools.lru_cache(maxsize=1)
def _spin_terms():
    jx, jy, jz = collective_product_ops()
    jsq = jx @ jx + jy @ jy + jz @ jz
    return jsq - jz @ jz, jz


def effective_hamiltonian(p: CavityParams, include_thermal: bool = True) -> EffectiveH:
    """delta0 (J^2 - Jz^2 + 2 nbar Jz) in the product basis; thermal part optional."""
    d0 = delta0(p)
    quad, jz = _spin_terms()
    h = quad.copy()
    if include_thermal and p.nbar:
        h = h + 2.0 * p.nbar * jz
    m = d0 * h
    m.setflags(write=False)
    return EffectiveH(m, d0)


def evolve(psi0: ProductState, h: EffectiveH, t: float) -> ProductState:
    """exp(-i H t) psi0 via the spectral decomposition of H."""
    psi0 = numerics.as_cvec(psi0)
    if t == 0:
        return psi0.copy()
    eig = h.eig
    return kernels.evolve_many(psi0, eig.eigenvalues, eig.eigenvectors, np.array([float(t)]))[0]


def scan_times(psi0: ProductState, h: EffectiveH, t_grid: Sequence[float]) -> np.ndarray:
    """States at every time of an ascending grid, one row per grid point."""
    ts = np.asarray(t_grid, dtype=float).ravel()
    if ts.size == 0:
        raise EmptyGrid("time grid is empty")
    if np.any(np.diff(ts) < 0):
        raise ValueError("time grid must be ascending")
    psi0 = numerics.as_cvec(psi0)
    eig = h.eig
    out = kernels.evolve_many(psi0, eig.eigenvalues, eig.eigenvectors, ts)
    out[ts == 0] = psi0
    return out


def z_rotation(angle: float) -> np.ndarray:
    """Collective rotation exp(-i angle Jz) acting on both atoms."""
    _, jz = _spin_terms()
    return np.diag(np.exp(-1j * angle * jz.diagonal().real))
