"""Hot numeric kernels with two interchangeable implementations.

Every kernel exists as an explicit-loop function, compiled with numba when it
is available, and as a vectorised numpy function. The module-level names
(``eigh_jacobi``, ``reduce_pure`` ...) are bound to one family at import time
according to ``DISPCAV_NUMBA``; both families stay reachable through
``IMPLEMENTATIONS`` so tests and the benchmark can compare them.

Conventions shared by all kernels:

* two-atom amplitudes are rows of an ``(N, 4)`` complex array ordered
  (+1/2,+1/2), (+1/2,-1/2), (-1/2,+1/2), (-1/2,-1/2);
* the flat index is ``2*a + b`` with ``a`` the atom-A bit and ``b`` atom B.
"""

import math

import numpy as np

from ._jit import USE_NUMBA, njit

SQUEEZE_FIELDS = ("magnitude", "dJx", "dJy", "Sx", "Sy", "Smin", "product", "defined")


# ---------------------------------------------------------------------------
# loop implementations (numba targets)
# ---------------------------------------------------------------------------


def _eigh_jacobi_loop(a, tol, max_sweeps):
    n = a.shape[0]
    A = a.astype(np.complex128).copy()
    V = np.eye(n, dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += abs(A[i, j]) ** 2
    scale = math.sqrt(scale)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += abs(A[i, j]) ** 2
        if math.sqrt(off) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = abs(A[p, q])
                if mag == 0.0:
                    continue
                ph = A[p, q] / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                jpp = complex(c, 0.0)
                jpq = complex(s, 0.0)
                jqp = -s * ph.conjugate()
                jqq = c * ph.conjugate()
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = akp * jpp + akq * jqp
                    A[k, q] = akp * jpq + akq * jqq
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = vkp * jpp + vkq * jqp
                    V[k, q] = vkp * jpq + vkq * jqq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = jpp.conjugate() * apk + jqp.conjugate() * aqk
                    A[q, k] = jpq.conjugate() * apk + jqq.conjugate() * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i].real
    order = np.argsort(w)
    w_sorted = np.empty(n)
    V_sorted = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        w_sorted[j] = w[order[j]]
        for i in range(n):
            V_sorted[i, j] = V[i, order[j]]
    return w_sorted, V_sorted


def _reduce_pure_loop(psis, keep_a):
    n = psis.shape[0]
    out = np.zeros((n, 2, 2), dtype=np.complex128)
    for s in range(n):
        for x in range(2):
            for y in range(2):
                acc = 0.0j
                for other in range(2):
                    if keep_a:
                        acc += psis[s, 2 * x + other] * psis[s, 2 * y + other].conjugate()
                    else:
                        acc += psis[s, 2 * other + x] * psis[s, 2 * other + y].conjugate()
                out[s, x, y] = acc
    return out


def _eigvalsh2_loop(ms):
    n = ms.shape[0]
    out = np.empty((n, 2))
    for s in range(n):
        a = ms[s, 0, 0].real
        d = ms[s, 1, 1].real
        mean = 0.5 * (a + d)
        r = math.hypot(0.5 * (a - d), abs(ms[s, 0, 1]))
        out[s, 0] = mean - r
        out[s, 1] = mean + r
    return out


def _entropy_bits_loop(lams):
    n, k = lams.shape
    out = np.zeros(n)
    for s in range(n):
        acc = 0.0
        for i in range(k):
            lam = lams[s, i]
            if 0.0 < lam < 1.0:
                acc -= lam * math.log2(lam)
        out[s] = acc
    return out


def _spin_moments_loop(psis, ops):
    n = psis.shape[0]
    dim = psis.shape[1]
    means = np.empty((n, 3))
    second = np.empty((n, 3, 3))
    phi = np.empty((3, dim), dtype=np.complex128)
    for s in range(n):
        for a in range(3):
            for r in range(dim):
                acc = 0.0j
                for c in range(dim):
                    acc += ops[a, r, c] * psis[s, c]
                phi[a, r] = acc
        for a in range(3):
            acc = 0.0j
            for r in range(dim):
                acc += psis[s, r].conjugate() * phi[a, r]
            means[s, a] = acc.real
            for b in range(3):
                acc2 = 0.0j
                for r in range(dim):
                    acc2 += phi[a, r].conjugate() * phi[b, r]
                second[s, a, b] = acc2.real
    return means, second


def _squeezing_from_moments_loop(means, second, threshold):
    n = means.shape[0]
    out = np.full((n, 8), np.nan)
    for s in range(n):
        mx = means[s, 0]
        my = means[s, 1]
        mz = means[s, 2]
        rho = math.hypot(mx, my)
        mag = math.hypot(rho, mz)
        out[s, 0] = mag
        out[s, 7] = 0.0
        if mag < threshold:
            continue
        th = math.atan2(rho, mz)
        st = math.sin(th)
        ct = math.cos(th)
        ph = 0.0 if st < 1e-12 else math.atan2(my, mx)
        sp = math.sin(ph)
        cp = math.cos(ph)
        xp = (ct * cp, ct * sp, -st)
        yp = (-sp, cp, 0.0)
        vxx = 0.0
        vyy = 0.0
        vxy = 0.0
        for a in range(3):
            for b in range(3):
                cov = second[s, a, b] - means[s, a] * means[s, b]
                vxx += xp[a] * cov * xp[b]
                vyy += yp[a] * cov * yp[b]
                vxy += xp[a] * cov * yp[b]
        vxx = max(vxx, 0.0)
        vyy = max(vyy, 0.0)
        vmin = 0.5 * (vxx + vyy) - math.hypot(0.5 * (vxx - vyy), vxy)
        vmin = max(vmin, 0.0)
        dx = math.sqrt(vxx)
        dy = math.sqrt(vyy)
        root = math.sqrt(mag)
        out[s, 1] = dx
        out[s, 2] = dy
        out[s, 3] = math.sqrt(2.0) * dx / root
        out[s, 4] = math.sqrt(2.0) * dy / root
        out[s, 5] = math.sqrt(2.0 * vmin) / root
        out[s, 6] = dx * dy
        out[s, 7] = 1.0
    return out


def _evolve_many_loop(psi0, evals, evecs, ts):
    n = ts.shape[0]
    dim = psi0.shape[0]
    coeff = np.empty(dim, dtype=np.complex128)
    for i in range(dim):
        acc = 0.0j
        for r in range(dim):
            acc += evecs[r, i].conjugate() * psi0[r]
        coeff[i] = acc
    out = np.empty((n, dim), dtype=np.complex128)
    for s in range(n):
        for r in range(dim):
            acc = 0.0j
            for i in range(dim):
                ang = -evals[i] * ts[s]
                acc += evecs[r, i] * coeff[i] * complex(math.cos(ang), math.sin(ang))
            out[s, r] = acc
    return out


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _eigh_jacobi_np(a, tol, max_sweeps):
    n = a.shape[0]
    A = np.array(a, dtype=np.complex128)
    V = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(A)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        if np.linalg.norm(A[iu]) <= tol * scale:
            break
        for p, q in zip(*iu):
            mag = abs(A[p, q])
            if mag == 0.0:
                continue
            ph = A[p, q] / mag
            theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
            t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.hypot(t, 1.0)
            s = t * c
            rot = np.array([[c, s], [-s * np.conj(ph), c * np.conj(ph)]])
            idx = [p, q]
            A[:, idx] = A[:, idx] @ rot
            A[idx, :] = rot.conj().T @ A[idx, :]
            V[:, idx] = V[:, idx] @ rot
            A[p, q] = A[q, p] = 0.0
    w = A.diagonal().real
    order = np.argsort(w)
    return w[order], V[:, order]


def _reduce_pure_np(psis, keep_a):
    c = psis.reshape(-1, 2, 2)
    if keep_a:
        return np.einsum("sab,scb->sac", c, c.conj())
    return np.einsum("sab,sac->sbc", c, c.conj())


def _eigvalsh2_np(ms):
    a = ms[:, 0, 0].real
    d = ms[:, 1, 1].real
    mean = 0.5 * (a + d)
    r = np.hypot(0.5 * (a - d), np.abs(ms[:, 0, 1]))
    return np.stack([mean - r, mean + r], axis=1)


def _entropy_bits_np(lams):
    inside = (lams > 0.0) & (lams < 1.0)
    safe = np.where(inside, lams, 1.0)
    return -np.sum(np.where(inside, safe * np.log2(safe), 0.0), axis=1)


def _spin_moments_np(psis, ops):
    phi = np.einsum("arc,sc->sar", ops, psis)
    means = np.einsum("sr,sar->sa", psis.conj(), phi).real
    second = np.einsum("sar,sbr->sab", phi.conj(), phi).real
    return means, second


def _squeezing_from_moments_np(means, second, threshold):
    n = means.shape[0]
    out = np.full((n, 8), np.nan)
    mx, my, mz = means.T
    rho = np.hypot(mx, my)
    mag = np.hypot(rho, mz)
    out[:, 0] = mag
    out[:, 7] = 0.0
    ok = mag >= threshold
    if not ok.any():
        return out
    th = np.arctan2(rho, mz)
    st, ct = np.sin(th), np.cos(th)
    ph = np.where(st < 1e-12, 0.0, np.arctan2(my, mx))
    sp, cp = np.sin(ph), np.cos(ph)
    xp = np.stack([ct * cp, ct * sp, -st], axis=1)
    yp = np.stack([-sp, cp, np.zeros_like(sp)], axis=1)
    cov = second - means[:, :, None] * means[:, None, :]
    vxx = np.maximum(np.einsum("sa,sab,sb->s", xp, cov, xp), 0.0)
    vyy = np.maximum(np.einsum("sa,sab,sb->s", yp, cov, yp), 0.0)
    vxy = np.einsum("sa,sab,sb->s", xp, cov, yp)
    vmin = np.maximum(0.5 * (vxx + vyy) - np.hypot(0.5 * (vxx - vyy), vxy), 0.0)
    dx, dy = np.sqrt(vxx), np.sqrt(vyy)
    root = np.sqrt(np.where(ok, mag, 1.0))
    vals = np.stack(
        [
            dx,
            dy,
            np.sqrt(2.0) * dx / root,
            np.sqrt(2.0) * dy / root,
            np.sqrt(2.0 * vmin) / root,
            dx * dy,
            np.ones(n),
        ],
        axis=1,
    )
    out[ok, 1:] = vals[ok]
    return out


def _evolve_many_np(psi0, evals, evecs, ts):
    coeff = evecs.conj().T @ psi0
    phases = np.exp(-1j * np.outer(ts, evals))
    return (phases * coeff) @ evecs.T


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_NAMES = (
    "eigh_jacobi",
    "reduce_pure",
    "eigvalsh2",
    "entropy_bits",
    "spin_moments",
    "squeezing_from_moments",
    "evolve_many",
)

IMPLEMENTATIONS = {
    "numba": {name: njit(globals()[f"_{name}_loop"]) for name in _NAMES},
    "numpy": {name: globals()[f"_{name}_np"] for name in _NAMES},
}

BACKEND = "numba" if USE_NUMBA else "numpy"

eigh_jacobi = IMPLEMENTATIONS[BACKEND]["eigh_jacobi"]
reduce_pure = IMPLEMENTATIONS[BACKEND]["reduce_pure"]
eigvalsh2 = IMPLEMENTATIONS[BACKEND]["eigvalsh2"]
entropy_bits = IMPLEMENTATIONS[BACKEND]["entropy_bits"]
spin_moments = IMPLEMENTATIONS[BACKEND]["spin_moments"]
squeezing_from_moments = IMPLEMENTATIONS[BACKEND]["squeezing_from_moments"]
evolve_many = IMPLEMENTATIONS[BACKEND]["evolve_many"]
