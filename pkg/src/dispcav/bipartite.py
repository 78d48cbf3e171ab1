"""Two-qubit entanglement diagnostics.

Numeric route: |psi><psi| -> partial trace -> eigenvalues -> -sum lam log2 lam.
Closed route: the analytic mean-spin magnitude of the cavity-evolved coherent
state and the entropy built from it. Entropies are in bits.
"""

from __future__ import annotations

import dataclasses
import math
from typing import NamedTuple

import numpy as np

from . import kernels, numerics
from .errors import ConsistencyError, InvalidDensity, OutOfRange
from .spin_model import ProductState

_PAULI = numerics.pauli()
_EYE2 = np.eye(2, dtype=np.complex128)


def _atol() -> float:
    return numerics.SETTINGS.atol


def check_density(rho, dim: int | None = None) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return the array."""
    rho = numerics.as_cmat(rho)
    n = rho.shape[0]
    if rho.shape[1] != n or (dim is not None and n != dim):
        raise InvalidDensity(f"expected a {dim or n}x{dim or n} density matrix, got {rho.shape}")
    atol = _atol()
    if numerics.hermiticity_error(rho) > atol:
        raise InvalidDensity("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise InvalidDensity(f"trace is {np.trace(rho).real:.15g}, expected 1")
    if numerics.herm_eig(rho).eigenvalues[0] < -atol:
        raise InvalidDensity("density matrix has a negative eigenvalue")
    return rho


def density(psi: ProductState) -> np.ndarray:
    psi = numerics.as_cvec(psi)
    return np.outer(psi, psi.conj())


def partial_trace(rho, keep: str = "A") -> np.ndarray:
    """Reduce a two-qubit density matrix to atom ``keep`` ('A' or 'B')."""
    rho = check_density(rho, 4)
    r = rho.reshape(2, 2, 2, 2)
    if keep.upper() == "A":
        return np.einsum("abcb->ac", r)
    if keep.upper() == "B":
        return np.einsum("abad->bd", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


@dataclasses.dataclass(frozen=True)
class BlochDecomposition:
    u: np.ndarray
    v: np.ndarray
    beta: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rho = np.kron(_EYE2, _EYE2).astype(np.complex128)
        for i, s in enumerate(_PAULI):
            rho = rho + self.u[i] * np.kron(s, _EYE2) + self.v[i] * np.kron(_EYE2, s)
            for j, t in enumerate(_PAULI):
                rho = rho + self.beta[i, j] * np.kron(s, t)
        return rho / 4


def bloch_decompose(rho) -> BlochDecomposition:
    rho = check_density(rho, 4)
    u = np.array([np.trace(rho @ np.kron(s, _EYE2)).real for s in _PAULI])
    v = np.array([np.trace(rho @ np.kron(_EYE2, s)).real for s in _PAULI])
    beta = np.array([[np.trace(rho @ np.kron(s, t)).real for t in _PAULI] for s in _PAULI])
    return BlochDecomposition(u, v, beta)


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"binary entropy needs 0 <= x <= 1, got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def clamp_spectrum(lams) -> np.ndarray:
    """Clamp roundoff excursions outside [0, 1]; reject genuinely negative weights."""
    lams = np.asarray(lams, dtype=float)
    atol = _atol()
    if np.any(lams < -atol):
        raise InvalidDensity(f"eigenvalue {lams.min():.3e} is below -{atol:g}")
    if np.any(lams > 1.0 + atol):
        raise InvalidDensity(f"eigenvalue {lams.max():.15g} exceeds 1")
    return np.clip(lams, 0.0, 1.0)


def entropy_numeric(rho_reduced) -> float:
    """-sum lam log2 lam over the eigenvalues of a 2x2 density matrix."""
    rho = check_density(rho_reduced, 2)
    lams = clamp_spectrum(numerics.herm_eig(rho).eigenvalues)
    return float(kernels.entropy_bits(lams[None])[0])


def entropy_of_state(psi: ProductState, keep: str = "A") -> float:
    return entropy_numeric(partial_trace(density(psi), keep))


def concurrence_pure(psi: ProductState) -> float:
    """Pure-state concurrence, returned as 2 |det| of the 2x2 amplitude matrix.

    The reduced-purity form 2 (1 - Tr rho_A^2) and the Bloch form 1 - |u|^2
    are both evaluated and compared with C^2; squares are compared because
    the square root magnifies roundoff near C = 0.

    Raises:
        ConsistencyError: if either route differs from C^2 by more than 1e-10.
    """
    psi = numerics.as_cvec(psi)
    c = 2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2])
    rho = density(psi)
    rho_a = partial_trace(rho, "A")
    c2_purity = 2.0 * (1.0 - float(np.trace(rho_a @ rho_a).real))
    u = bloch_decompose(rho).u
    c2_bloch = 1.0 - float(u @ u)
    worst = max(abs(c2_purity - c * c), abs(c2_bloch - c * c))
    if worst > 1e-10:
        raise ConsistencyError(f"concurrence routes disagree by {worst:.3e} in C^2")
    return min(c, 1.0)


def eof(c: float) -> float:
    """Entanglement of formation H((1 + sqrt(1 - c^2)) / 2)."""
    if not 0.0 <= c <= 1.0:
        raise OutOfRange(f"concurrence must lie in [0, 1], got {c}")
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def entropy_from_bloch_norm(u_norm: float) -> float:
    """Entropy of a qubit whose Bloch vector has length ``u_norm``."""
    u_norm = min(max(u_norm, 0.0), 1.0)
    return binary_entropy(0.5 + 0.5 * u_norm)


def entropy_from_mean_spin(spin_mag: float) -> float:
    """Entropy of a spin-1/2 whose mean spin vector has length ``spin_mag`` (<= 1/2)."""
    spin_mag = min(max(spin_mag, 0.0), 0.5)
    return binary_entropy(0.5 + spin_mag)


def _unentangled_weight(theta, phase):
    # 1 - sin^2(phase) sin^4(theta), written as a sum of non-negative terms
    s2 = np.sin(phase) ** 2
    st2 = np.sin(theta) ** 2
    return np.cos(phase) ** 2 + s2 * np.cos(theta) ** 2 * (1.0 + st2)


def mean_spin_mag_closed(theta, phase):
    """|<J1>| = |<J2>| = sqrt(1 - sin^2(delta0 t) sin^4(theta)) / 2. Vectorised."""
    out = 0.5 * np.sqrt(_unentangled_weight(theta, phase))
    return float(out) if np.ndim(out) == 0 else out


def entropy_closed(theta, phase):
    """Closed-form entanglement entropy at angle ``theta`` and delta0*t = ``phase``.

    Accepts scalars or broadcastable arrays; 0 log 0 is taken as 0.
    """
    r = np.sqrt(_unentangled_weight(theta, phase))
    r = np.minimum(r, 1.0)
    # 1 - r computed without cancellation: (1 - r^2) / (1 + r)
    lo = 0.5 * (np.sin(phase) ** 2 * np.sin(theta) ** 4) / (1.0 + r)
    hi = 0.5 * (1.0 + r)
    lams = np.stack(np.broadcast_arrays(lo, hi), axis=-1)
    out = kernels.entropy_bits(np.ascontiguousarray(lams.reshape(-1, 2), dtype=float))
    out = out.reshape(np.shape(lo))
    return float(out) if out.ndim == 0 else out


class Probabilities(NamedTuple):
    P1: float
    P2: float
    P3: float
    P4: float


def probabilities(theta: float) -> Probabilities:
    """Occupations of |++>, |+->, |-+>, |--> (time independent)."""
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    mixed = 0.25 * math.sin(theta) ** 2
    return Probabilities(c**4, mixed, mixed, s**4)


def max_entanglement_times(n_max: int) -> list[float]:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return [(2 * n + 1) * math.pi / 2 for n in range(n_max + 1)]


@dataclasses.dataclass(frozen=True)
class EntanglementReport:
    entropy_numeric: float
    entropy_closed: float
    concurrence: float
    eof: float
    mean_spin_mag: float
    probabilities: Probabilities


def entanglement_report(psi: ProductState, theta: float, phase: float) -> EntanglementReport:
    """Diagnostics of ``psi``, paired with the closed forms at (theta, delta0 t)."""
    s_num = entropy_of_state(psi)
    c = concurrence_pure(psi)
    u = bloch_decompose(density(psi)).u
    return EntanglementReport(
        entropy_numeric=s_num,
        entropy_closed=entropy_closed(theta, phase),
        concurrence=c,
        eof=eof(min(c, 1.0)),
        mean_spin_mag=0.5 * float(np.linalg.norm(u)),
        probabilities=Probabilities(*(np.abs(numerics.as_cvec(psi)) ** 2)),
    )


def entropies(psis: np.ndarray, keep: str = "A") -> np.ndarray:
    """Numeric entropies of many pure states (rows of ``psis``) at once."""
    psis = np.ascontiguousarray(psis, dtype=np.complex128)
    rho = kernels.reduce_pure(psis, keep.upper() == "A")
    lams = clamp_spectrum(kernels.eigvalsh2(rho))
    return kernels.entropy_bits(lams)
