"""Brute-force reference values built only from the four evolved amplitudes.

Nothing here imports the operator, dynamics, entanglement or squeezing
modules: the amplitudes are written out literally and every quantity is an
explicit sum over them, so agreement with the main pipeline is evidence
rather than tautology.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from typing import Optional

from .errors import PoleAtPi

_POLE_TOL = 1e-12

# single-atom matrices of sigma_x, sigma_y, sigma_z as nested tuples
_SIG = (
    ((0, 1), (1, 0)),
    ((0, -1j), (1j, 0)),
    ((1, 0), (0, -1)),
)


def oracle_state(theta: float, phi: float, delta0_t: float, limit: bool = False) -> tuple[complex, ...]:
    """Amplitudes (e^{-it}, chi e^{-2it}, chi e^{-2it}, chi^2 e^{-it}) / (1 + |chi|^2).

    ``theta`` within 1e-12 of pi raises :class:`PoleAtPi` unless ``limit`` is
    set, in which case the all-down limit e^{2i phi} e^{-it} |--> is returned.
    """
    e1 = cmath.exp(-1j * delta0_t)
    e2 = cmath.exp(-2j * delta0_t)
    if abs(theta - math.pi) < _POLE_TOL:
        if not limit:
            raise PoleAtPi("chi = tan(theta/2) diverges at theta = pi")
        return (0j, 0j, 0j, cmath.exp(2j * phi) * e1)
    chi = math.tan(theta / 2) * cmath.exp(1j * phi)
    norm = 1.0 + abs(chi) ** 2
    return (e1 / norm, chi * e2 / norm, chi * e2 / norm, chi * chi * e1 / norm)


def _amp(psi, a, b):
    # a, b in {0, 1}: 0 = up (+1/2), 1 = down (-1/2)
    return psi[2 * a + b]


def reduced_a(psi) -> list[list[complex]]:
    """rho_A[a][a'] = sum_b psi(a, b) conj(psi(a', b))."""
    return [
        [sum(_amp(psi, a, b) * _amp(psi, c, b).conjugate() for b in (0, 1)) for c in (0, 1)]
        for a in (0, 1)
    ]


def reduced_b(psi) -> list[list[complex]]:
    return [
        [sum(_amp(psi, a, b) * _amp(psi, a, d).conjugate() for a in (0, 1)) for d in (0, 1)]
        for b in (0, 1)
    ]


def _bloch(rho2) -> tuple[float, float, float]:
    return tuple(sum(rho2[i][k] * _SIG[s][k][i] for i in (0, 1) for k in (0, 1)).real for s in range(3))


def _h2(lam_hi: float, lam_lo: float) -> float:
    total = 0.0
    for lam in (lam_hi, lam_lo):
        if lam > 0.0:
            total -= lam * math.log2(lam)
    return total


def _collective_apply(psi, s):
    """(sigma_s (x) 1 + 1 (x) sigma_s) / 2 applied to psi, entry by entry."""
    out = []
    for a in (0, 1):
        for b in (0, 1):
            acc = 0j
            for c in (0, 1):
                acc += _SIG[s][a][c] * _amp(psi, c, b)
                acc += _SIG[s][b][c] * _amp(psi, a, c)
            out.append(0.5 * acc)
    return out


def _inner(x, y) -> complex:
    return sum(xi.conjugate() * yi for xi, yi in zip(x, y))


def _squeezing(psi) -> Optional[tuple[float, float]]:
    applied = [_collective_apply(psi, s) for s in range(3)]
    mean = [_inner(psi, applied[s]).real for s in range(3)]
    mag = math.sqrt(sum(m * m for m in mean))
    if mag < 1e-9:
        return None
    zp = [m / mag for m in mean]
    horiz = math.sqrt(zp[0] ** 2 + zp[1] ** 2)
    if horiz < 1e-12:
        # mean spin on the z axis: y' = y, x' = y' x z'
        yp = [0.0, 1.0, 0.0]
    else:
        # y' = z x z' normalised
        yp = [-zp[1] / horiz, zp[0] / horiz, 0.0]
    xp = [
        yp[1] * zp[2] - yp[2] * zp[1],
        yp[2] * zp[0] - yp[0] * zp[2],
        yp[0] * zp[1] - yp[1] * zp[0],
    ]

    def spread(n):
        vec = [sum(n[s] * applied[s][r] for s in range(3)) for r in range(4)]
        first = _inner(psi, vec).real
        second = _inner(vec, vec).real
        return math.sqrt(max(second - first * first, 0.0))

    return (
        math.sqrt(2.0) * spread(xp) / math.sqrt(mag),
        math.sqrt(2.0) * spread(yp) / math.sqrt(mag),
    )


@dataclasses.dataclass(frozen=True)
class OracleReport:
    entropy: float
    mean_spin_mag: float
    concurrence: float
    probabilities: tuple[float, float, float, float]
    squeezing: Optional[tuple[float, float]]


def oracle_full(theta: float, phi: float, delta0_t: float) -> OracleReport:
    psi = oracle_state(theta, phi, delta0_t, limit=True)
    rho = reduced_a(psi)
    u = _bloch(rho)
    u_norm = min(math.sqrt(sum(x * x for x in u)), 1.0)
    # spin-flip overlap <psi| sigma_y (x) sigma_y |psi*>
    flipped = [
        sum(_SIG[1][a][c] * _SIG[1][b][d] * _amp(psi, c, d).conjugate() for c in (0, 1) for d in (0, 1))
        for a in (0, 1)
        for b in (0, 1)
    ]
    return OracleReport(
        entropy=_h2(0.5 * (1.0 + u_norm), 0.5 * (1.0 - u_norm)),
        mean_spin_mag=0.5 * u_norm,
        concurrence=abs(_inner(psi, flipped)),
        probabilities=tuple(abs(a) ** 2 for a in psi),
        squeezing=_squeezing(psi),
    )
