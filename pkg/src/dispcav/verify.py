"""Randomised cross-validation of the main pipeline against the oracle.

Each check returns a :class:`CheckResult` carrying the worst deviation seen
and the parameter triple (theta, phi, delta0 t) that produced it.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Iterable

import numpy as np

from . import bipartite, dynamics, oracle, spin_model, squeezing


@dataclasses.dataclass
class CheckResult:
    name: str
    tolerance: float
    worst: float = 0.0
    where: tuple = ()

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.tolerance)

    def update(self, err: float, where: tuple) -> None:
        if not math.isfinite(err):
            err = math.inf
        if err >= self.worst:
            self.worst = err
            self.where = where


def sample_triples(seed: int, samples: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.column_stack(
        [
            rng.uniform(0.0, math.pi, samples),
            rng.uniform(0.0, 2 * math.pi, samples),
            rng.uniform(0.0, 2 * math.pi, samples),
        ]
    )


def random_pure_states(seed: int, samples: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(samples, 4)) + 1j * rng.normal(size=(samples, 4))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def run_checks(seed: int = 42, samples: int = 1000) -> list[CheckResult]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    unit = dynamics.effective_hamiltonian(dynamics.CavityParams.unit())
    checks = {
        name: CheckResult(name, tol)
        for name, tol in [
            ("state vs oracle", 1e-12),
            ("entropy numeric vs oracle", 1e-10),
            ("entropy closed vs numeric", 1e-10),
            ("entropy A vs B", 1e-12),
            ("mean spin closed vs |u|/2", 1e-10),
            ("mean spin vs oracle", 1e-10),
            ("concurrence vs oracle", 1e-10),
            ("probabilities vs oracle", 1e-12),
            ("probabilities closed form", 1e-12),
            ("squeezing vs oracle", 1e-10),
            ("uncertainty bound", 1e-12),
            ("rotated frame transverse mean", 1e-10),
            ("kernel vs rotation route", 1e-10),
            ("norm preserved", 1e-12),
            ("composition", 1e-12),
            ("thermal invariance", 1e-10),
            ("E = F(C) random states", 1e-10),
            ("Bloch reconstruction", 1e-12),
        ]
    }

    def hit(name, err, where):
        checks[name].update(float(err), where)

    triples = sample_triples(seed, samples)
    nbars = np.random.default_rng(seed + 1).choice([0.5, 1.0, 3.0], size=samples)
    for (theta, phi, tau), nbar in zip(triples, nbars):
        where = (float(theta), float(phi), float(tau))
        psi0 = spin_model.initial_product_state(theta, phi)
        psi = dynamics.evolve(psi0, unit, tau)
        ref = oracle.oracle_full(theta, phi, tau)

        hit("state vs oracle", np.max(np.abs(psi - np.array(oracle.oracle_state(theta, phi, tau)))), where)
        hit("norm preserved", abs(np.linalg.norm(psi) - 1.0), where)

        rho = bipartite.density(psi)
        s_a = bipartite.entropy_numeric(bipartite.partial_trace(rho, "A"))
        s_b = bipartite.entropy_numeric(bipartite.partial_trace(rho, "B"))
        hit("entropy numeric vs oracle", abs(s_a - ref.entropy), where)
        hit("entropy closed vs numeric", abs(bipartite.entropy_closed(theta, tau) - s_a), where)
        hit("entropy A vs B", abs(s_a - s_b), where)

        dec = bipartite.bloch_decompose(rho)
        hit("Bloch reconstruction", np.max(np.abs(dec.reconstruct() - rho)), where)
        half_u = 0.5 * float(np.linalg.norm(dec.u))
        hit("mean spin closed vs |u|/2", abs(bipartite.mean_spin_mag_closed(theta, tau) - half_u), where)
        hit("mean spin vs oracle", abs(half_u - ref.mean_spin_mag), where)
        hit("concurrence vs oracle", abs(bipartite.concurrence_pure(psi) - ref.concurrence), where)

        probs = np.abs(psi) ** 2
        hit("probabilities vs oracle", np.max(np.abs(probs - np.array(ref.probabilities))), where)
        hit("probabilities closed form", np.max(np.abs(probs - np.array(bipartite.probabilities(theta)))), where)

        rep = squeezing.squeezing_params(psi)
        if rep.defined and ref.squeezing is not None:
            err = max(abs(rep.Sx - ref.squeezing[0]), abs(rep.Sy - ref.squeezing[1]))
            hit("squeezing vs oracle", err, where)
            hit("uncertainty bound", max(rep.bound - rep.uncertainty_product, 0.0), where)
            rotated = squeezing.mean_spin(squeezing.rotate_to_mean_frame(psi)).vector
            hit("rotated frame transverse mean", max(abs(rotated[0]), abs(rotated[1])), where)
            batch = squeezing.squeezing_many(psi[None])
            err = max(abs(batch[k][0] - getattr(rep, a)) for k, a in [("Sx", "Sx"), ("Sy", "Sy"), ("Smin", "Smin")])
            hit("kernel vs rotation route", err, where)
        elif rep.defined != (ref.squeezing is not None):
            hit("squeezing vs oracle", math.inf, where)

        half = dynamics.evolve(dynamics.evolve(psi0, unit, tau / 2), unit, tau / 2)
        hit("composition", np.max(np.abs(half - psi)), where)

        hot = dynamics.effective_hamiltonian(dynamics.CavityParams.unit(nbar=float(nbar)))
        psi_hot = dynamics.evolve(psi0, hot, tau)
        rep_hot = squeezing.squeezing_params(psi_hot)
        err = abs(bipartite.entropy_of_state(psi_hot) - s_a)
        if rep.defined and rep_hot.defined:
            err = max(err, abs(rep_hot.Sx - rep.Sx), abs(rep_hot.Sy - rep.Sy), abs(rep_hot.Smin - rep.Smin))
        hit("thermal invariance", err, where)

    for k, psi in enumerate(random_pure_states(seed + 2, samples)):
        s = bipartite.entropy_of_state(psi)
        hit("E = F(C) random states", abs(bipartite.eof(min(bipartite.concurrence_pure(psi), 1.0)) - s), (k,))

    return list(checks.values())


def format_table(results: Iterable[CheckResult], echo: Callable[[str], None] = print) -> None:
    results = list(results)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        echo(f"{status}  {r.name:<{width}}  worst={r.worst:.3e}  tol={r.tolerance:.0e}")
        if not r.passed:
            echo(f"      worst case at {r.where}")
