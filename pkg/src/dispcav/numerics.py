"""Small dense complex linear algebra (dimensions up to 16, in practice 4).

Vectors and matrices are plain ``numpy`` arrays of dtype ``complex128``;
``as_cvec`` / ``as_cmat`` are the validating constructors.
"""

from __future__ import annotations

import contextlib
import dataclasses
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotHermitian

MAX_DIM = 16


@dataclasses.dataclass(frozen=True)
class Settings:
    """Absolute tolerances used by validation checks throughout the package."""

    atol: float = 1e-12
    eig_tol: float = 1e-15
    max_sweeps: int = 60


SETTINGS = Settings()


@contextlib.contextmanager
def tolerances(**changes):
    """Temporarily replace fields of the global :data:`SETTINGS`."""
    global SETTINGS
    old = SETTINGS
    SETTINGS = dataclasses.replace(old, **changes)
    try:
        yield SETTINGS
    finally:
        SETTINGS = old


class HermEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_cvec(entries) -> np.ndarray:
    v = np.asarray(entries, dtype=np.complex128)
    if v.ndim != 1 or not 0 < v.size <= MAX_DIM:
        raise DimensionMismatch(f"expected a vector of length 1..{MAX_DIM}, got shape {v.shape}")
    return v


def as_cmat(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or not (0 < m.shape[0] <= MAX_DIM and 0 < m.shape[1] <= MAX_DIM):
        raise DimensionMismatch(f"expected a matrix with sides 1..{MAX_DIM}, got shape {m.shape}")
    return m


def pauli() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return (
        np.array([[0, 1], [1, 0]], dtype=np.complex128),
        np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        np.array([[1, 0], [0, -1]], dtype=np.complex128),
    )


def kron(a, b) -> np.ndarray:
    return np.kron(as_cmat(a), as_cmat(b))


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, atol: float | None = None) -> bool:
    m = as_cmat(m)
    atol = SETTINGS.atol if atol is None else atol
    return m.shape[0] == m.shape[1] and hermiticity_error(m) <= atol


def herm_eig(m) -> HermEig:
    """Eigendecomposition of a small Hermitian matrix, eigenvalues ascending.

    2x2 uses the closed form; larger matrices use cyclic complex Jacobi
    rotations in :mod:`dispcav.kernels`.

    Raises:
        DimensionMismatch: if ``m`` is not square.
        NotHermitian: if ``max |m - m^H|`` exceeds ``SETTINGS.atol``.
    """
    m = as_cmat(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"herm_eig needs a square matrix, got {m.shape}")
    err = hermiticity_error(m)
    if err > SETTINGS.atol:
        raise NotHermitian(f"max |m - m^H| = {err:.3e}")
    m = 0.5 * (m + m.conj().T)
    n = m.shape[0]
    if n == 1:
        return HermEig(np.array([m[0, 0].real]), np.ones((1, 1), dtype=np.complex128))
    if n == 2:
        return _eig2(m)
    w, v = kernels.eigh_jacobi(m, SETTINGS.eig_tol, SETTINGS.max_sweeps)
    return HermEig(w, v)


def _eig2(m: np.ndarray) -> HermEig:
    w = kernels.eigvalsh2(m[None])[0]
    a, d, b = m[0, 0].real, m[1, 1].real, m[0, 1]
    if abs(b) <= 1e-300:
        # already diagonal; keep basis order consistent with ascending w
        vecs = np.eye(2, dtype=np.complex128) if a <= d else np.eye(2, dtype=np.complex128)[:, ::-1]
        return HermEig(w, vecs.copy())
    cols = []
    for lam in w:
        # (m - lam) x = 0  ->  x ~ (b, lam - a) or (lam - d, conj(b)); take the larger
        x1 = np.array([b, lam - a])
        x2 = np.array([lam - d, np.conj(b)])
        x = x1 if np.linalg.norm(x1) >= np.linalg.norm(x2) else x2
        cols.append(x / np.linalg.norm(x))
    vecs = np.array(cols, dtype=np.complex128).T
    # orthogonalise the second column against the first when eigenvalues nearly coincide
    vecs[:, 1] -= np.vdot(vecs[:, 0], vecs[:, 1]) * vecs[:, 0]
    vecs[:, 1] /= np.linalg.norm(vecs[:, 1])
    return HermEig(w, vecs)


def expm_hermitian(h, t: float) -> np.ndarray:
    """``exp(-i h t)`` for Hermitian ``h`` via its spectral decomposition."""
    eig = herm_eig(h)
    v = eig.eigenvectors
    return (v * np.exp(-1j * eig.eigenvalues * t)) @ v.conj().T


def expectation(state, op) -> complex:
    """``<state|op|state>``.

    Raises:
        DimensionMismatch: on incompatible shapes.
        ValueError: if ``state`` is not normalised within ``SETTINGS.atol``.
    """
    psi = as_cvec(state)
    op = as_cmat(op)
    if op.shape != (psi.size, psi.size):
        raise DimensionMismatch(f"operator {op.shape} cannot act on a vector of length {psi.size}")
    norm_err = abs(np.vdot(psi, psi).real - 1.0)
    if norm_err > SETTINGS.atol:
        raise ValueError(f"state not normalised (|<psi|psi> - 1| = {norm_err:.3e})")
    return complex(np.vdot(psi, op @ psi))
