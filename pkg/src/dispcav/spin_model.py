"""Spin operators, atomic coherent states and the j = 1 Dicke/product map.

Basis orders: Dicke states run over m = j, j-1, ..., -j; two-atom product
states run over (+1/2,+1/2), (+1/2,-1/2), (-1/2,+1/2), (-1/2,-1/2).
hbar = 1 throughout.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import InvalidJ, WrongJ

ProductState = np.ndarray


def _check_j(j) -> float:
    two_j = Fraction(j).limit_denominator(1000) * 2
    if two_j.denominator != 1 or two_j < 1 or abs(float(two_j) - 2 * float(j)) > 1e-12:
        raise InvalidJ(f"j must be a positive half-integer, got {j!r}")
    return float(two_j) / 2


@dataclasses.dataclass(frozen=True)
class CoherentPrep:
    """Atomic coherent state |j, chi> with chi = tan(theta/2) e^{i phi}."""

    j: float = 1.0
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "j", _check_j(self.j))
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")

    @property
    def chi(self) -> complex:
        return math.tan(self.theta / 2) * complex(math.cos(self.phi), math.sin(self.phi))


@dataclasses.dataclass(frozen=True)
class DickeState:
    j: float
    amplitudes: np.ndarray

    def __post_init__(self):
        j = _check_j(self.j)
        amps = numerics.as_cvec(self.amplitudes)
        if amps.size != int(round(2 * j)) + 1:
            raise ValueError(f"{amps.size} amplitudes given for j = {j}")
        amps.setflags(write=False)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "amplitudes", amps)


class CollectiveOps(NamedTuple):
    Jx: np.ndarray
    Jy: np.ndarray
    Jz: np.ndarray
    Jplus: np.ndarray
    Jminus: np.ndarray
    Jsq: np.ndarray


class AtomOps(NamedTuple):
    J1x: np.ndarray
    J1y: np.ndarray
    J1z: np.ndarray
    J2x: np.ndarray
    J2y: np.ndarray
    J2z: np.ndarray


def collective_ops(j) -> CollectiveOps:
    """Angular-momentum matrices for spin ``j`` in the descending-m basis."""
    j = _check_j(j)
    dim = int(round(2 * j)) + 1
    m = j - np.arange(dim)
    jz = np.diag(m).astype(np.complex128)
    jp = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(1, dim):
        # <j, m+1 | J+ | j, m>, row index col-1 holds m+1
        jp[col - 1, col] = math.sqrt(j * (j + 1) - m[col] * (m[col] + 1))
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    jsq = j * (j + 1) * np.eye(dim, dtype=np.complex128)
    return CollectiveOps(jx, jy, jz, jp, jm, jsq)


def coherent_state(prep: CoherentPrep) -> DickeState:
    """Amplitude of |j, j-n> is (1+|chi|^2)^{-j} sqrt(C(2j, n)) chi^n.

    At theta = pi the pole of chi is removed by returning the all-down state
    with its limiting phase e^{2ij phi}.
    """
    j = prep.j
    two_j = int(round(2 * j))
    if prep.theta == math.pi:
        amps = np.zeros(two_j + 1, dtype=np.complex128)
        amps[-1] = np.exp(1j * two_j * prep.phi)
        return DickeState(j, amps)
    chi = prep.chi
    pref = (1.0 + abs(chi) ** 2) ** (-j)
    amps = np.array(
        [pref * math.sqrt(math.comb(two_j, n)) * chi**n for n in range(two_j + 1)],
        dtype=np.complex128,
    )
    return DickeState(j, amps)


_S = 1.0 / math.sqrt(2.0)
# columns: |1,1>, |1,0>, |1,-1> written in the product basis
DICKE_TO_PRODUCT = np.array(
    [
        [1, 0, 0],
        [0, _S, 0],
        [0, _S, 0],
        [0, 0, 1],
    ],
    dtype=np.complex128,
)
DICKE_TO_PRODUCT.setflags(write=False)


def dicke_to_product(d: DickeState) -> ProductState:
    if d.j != 1.0:
        raise WrongJ(f"the product-basis map is defined for j = 1 only, got j = {d.j}")
    return DICKE_TO_PRODUCT @ d.amplitudes


def single_atom_ops() -> AtomOps:
    sx, sy, sz = numerics.pauli()
    eye = np.eye(2, dtype=np.complex128)
    return AtomOps(
        numerics.kron(sx / 2, eye),
        numerics.kron(sy / 2, eye),
        numerics.kron(sz / 2, eye),
        numerics.kron(eye, sx / 2),
        numerics.kron(eye, sy / 2),
        numerics.kron(eye, sz / 2),
    )


def collective_product_ops() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Collective (Jx, Jy, Jz) = J1 + J2 on the 4-dimensional product space."""
    a = single_atom_ops()
    return a.J1x + a.J2x, a.J1y + a.J2y, a.J1z + a.J2z


def initial_product_state(theta: float, phi: float = 0.0) -> ProductState:
    """j = 1 coherent state mapped to the product basis."""
    return dicke_to_product(coherent_state(CoherentPrep(1, theta, phi)))
