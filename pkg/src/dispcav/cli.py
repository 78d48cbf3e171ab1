"""Command-line entry point: figure/table CSV reproduction and verification.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import math
import sys
import time
from typing import Sequence

import numpy as np

from . import bipartite, dynamics, spin_model, squeezing, verify
from .errors import DegenerateCavity

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

FIG1_THETAS = (("pi6", math.pi / 6), ("pi2", math.pi / 2), ("2pi3", 2 * math.pi / 3))
TABLE1_THETAS = (("pi/6", math.pi / 6), ("pi/2", math.pi / 2), ("2pi/3", 2 * math.pi / 3))


class UsageError(Exception):
    pass


@dataclasses.dataclass
class RunConfig:
    theta: float | None = None
    phi: float = 0.0
    g: float | None = None
    delta: float | None = None
    k: float | None = None
    nbar: float = 0.0
    t_min: float | None = None
    t_max: float | None = None
    steps: int | None = None
    output_path: str | None = None
    format: str = "csv"

    def cavity(self) -> dynamics.CavityParams:
        given = [x is not None for x in (self.g, self.delta, self.k)]
        if not any(given):
            return dynamics.CavityParams.unit(self.nbar)
        if not all(given):
            raise UsageError("--g, --delta and --k must be given together")
        params = dynamics.CavityParams(self.g, self.delta, self.k, self.nbar)
        try:
            d0 = params.delta0
        except DegenerateCavity as exc:
            raise UsageError(str(exc)) from exc
        if d0 == 0.0:
            raise UsageError("delta0 = 0: the dimensionless time axis is undefined")
        return params

    def checked_theta(self, default: float) -> float:
        theta = default if self.theta is None else self.theta
        if not 0.0 <= theta <= math.pi:
            raise UsageError("--theta must lie in [0, pi]")
        return theta

    def grid(self, lo: float, hi: float, steps: int) -> np.ndarray:
        lo = lo if self.t_min is None else self.t_min
        hi = hi if self.t_max is None else self.t_max
        steps = steps if self.steps is None else self.steps
        if steps < 2:
            raise UsageError("--steps must be at least 2")
        if not lo < hi:
            raise UsageError("--tmin must be smaller than --tmax")
        return np.linspace(lo, hi, steps)


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    return format(float(x), ".12g")


def render_csv(header: Sequence[str], rows, comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def render_svg(header: Sequence[str], rows, title: str = "") -> str:
    """Plain polylines of every column against the first; axes labelled, nothing else."""
    data = np.array([[np.nan if x is None else float(x) for x in r] for r in rows], dtype=float)
    x = data[:, 0]
    ys = data[:, 1:]
    W, H, pad = 640, 400, 50
    finite = ys[np.isfinite(ys)]
    y_lo = min(0.0, finite.min()) if finite.size else 0.0
    y_hi = max(1.0, finite.max()) if finite.size else 1.0

    def px(v):
        return pad + (v - x[0]) / (x[-1] - x[0]) * (W - 2 * pad)

    def py(v):
        return H - pad - (v - y_lo) / (y_hi - y_lo) * (H - 2 * pad)

    colours = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}">',
        f'<line x1="{pad}" y1="{H - pad}" x2="{W - pad}" y2="{H - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{H - pad}" stroke="black"/>',
        f'<text x="{W / 2}" y="{H - 10}" text-anchor="middle">{header[0]}</text>',
        f'<text x="{W / 2}" y="20" text-anchor="middle">{title}</text>',
    ]
    for i, name in enumerate(header[1:]):
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, ys[:, i]) if np.isfinite(b))
        col = colours[i % len(colours)]
        parts.append(f'<polyline fill="none" stroke="{col}" points="{pts}"/>')
        parts.append(f'<text x="{W - pad + 4}" y="{pad + 16 * i}" fill="{col}" font-size="11">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(cfg: RunConfig, header, rows, comments=(), title="") -> None:
    rows = list(rows)
    text = render_svg(header, rows, title) if cfg.format == "svg" else render_csv(header, rows, comments)
    if cfg.output_path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _delta0_comment(params: dynamics.CavityParams) -> list[str]:
    return [f"delta0 = {fmt(params.delta0)} rad/s; time axis is delta0*t"]


def _entropy_curve(theta: float, phi: float, params: dynamics.CavityParams, taus: np.ndarray) -> np.ndarray:
    h = dynamics.effective_hamiltonian(params)
    psis = dynamics.scan_times(spin_model.initial_product_state(theta, phi), h, taus / h.delta0)
    return bipartite.entropies(psis)


def cmd_fig1(cfg: RunConfig) -> None:
    params = cfg.cavity()
    taus = cfg.grid(0.0, 2 * math.pi, 401)
    cols = [_entropy_curve(th, cfg.phi, params, taus) for _, th in FIG1_THETAS]
    header = ["delta0_t"] + [f"entropy_theta_{name}" for name, _ in FIG1_THETAS]
    emit(cfg, header, zip(taus, *cols), _delta0_comment(params), "entropy vs delta0 t")


def cmd_fig2(cfg: RunConfig, delta0_t: float = math.pi / 2) -> None:
    steps = 401 if cfg.steps is None else cfg.steps
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    thetas = np.linspace(0.0, 2 * math.pi, steps)
    h = dynamics.effective_hamiltonian(dynamics.CavityParams.unit())
    psis = np.array([dynamics.evolve(_folded_state(th, cfg.phi), h, delta0_t) for th in thetas])
    comments = [f"delta0_t fixed at {fmt(delta0_t)}"]
    emit(cfg, ["theta", "entropy"], zip(thetas, bipartite.entropies(psis)), comments, "entropy vs theta")


def _folded_state(theta: float, phi: float) -> np.ndarray:
    # theta in (pi, 2 pi) is the same Bloch direction as (2 pi - theta, phi + pi)
    folded = theta % (2 * math.pi)
    if folded > math.pi:
        folded, phi = 2 * math.pi - folded, phi + math.pi
    return spin_model.initial_product_state(folded, phi)


def cmd_fig3(cfg: RunConfig) -> None:
    params = cfg.cavity()
    theta = cfg.checked_theta(math.pi / 3)
    taus = cfg.grid(0.0, math.pi, 401)
    h = dynamics.effective_hamiltonian(params)
    psis = dynamics.scan_times(spin_model.initial_product_state(theta, cfg.phi), h, taus / h.delta0)
    ent = bipartite.entropies(psis)
    sq = squeezing.squeezing_many(psis)
    comments = _delta0_comment(params) + [
        f"theta = {fmt(theta)} rad; the source figure does not state its theta, pi/3 is the default"
    ]
    rows = zip(taus, ent, sq["Sx"], sq["Sy"], sq["Smin"], sq["defined"])
    emit(cfg, ["delta0_t", "E", "Sx", "Sy", "Smin", "defined"], rows, comments, "E, Sx, Sy vs delta0 t")


def table1_rows():
    return [(label, *bipartite.probabilities(th)) for label, th in TABLE1_THETAS]


def cmd_table1(cfg: RunConfig) -> None:
    emit(dataclasses.replace(cfg, format="csv"), ["theta", "P1", "P2", "P3", "P4"], table1_rows())


POINT_HEADER = [
    "theta", "phi", "delta0_t",
    "entropy_numeric", "entropy_closed", "concurrence", "eof", "mean_spin_mag",
    "P1", "P2", "P3", "P4",
    "J_mag", "dJx_prime", "dJy_prime", "Sx", "Sy", "Smin", "uncertainty_product", "bound", "defined",
]  # fmt: skip


def cmd_point(cfg: RunConfig, delta0_t: float) -> None:
    params = cfg.cavity()
    theta = cfg.checked_theta(0.0)
    h = dynamics.effective_hamiltonian(params)
    psi = dynamics.evolve(spin_model.initial_product_state(theta, cfg.phi), h, delta0_t / h.delta0)
    ent = bipartite.entanglement_report(psi, theta, delta0_t)
    sq = squeezing.squeezing_params(psi)
    row = [
        theta, cfg.phi, delta0_t,
        ent.entropy_numeric, ent.entropy_closed, ent.concurrence, ent.eof, ent.mean_spin_mag,
        *ent.probabilities,
        sq.magnitude, sq.dJx_prime, sq.dJy_prime, sq.Sx, sq.Sy, sq.Smin, sq.uncertainty_product, sq.bound, sq.defined,
    ]  # fmt: skip
    sys.stdout.write(render_csv(POINT_HEADER, [row]))


def cmd_verify(seed: int, samples: int) -> int:
    if samples < 1:
        raise UsageError("--samples must be >= 1")
    start = time.perf_counter()
    results = verify.run_checks(seed, samples)
    verify.format_table(results)
    ok = all(r.passed for r in results)
    print(f"{'ALL PASS' if ok else 'FAILED'}  seed={seed} samples={samples} ({time.perf_counter() - start:.2f} s)")
    return EXIT_OK if ok else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", type=float, help="coherent-state polar angle (rad)")
    common.add_argument("--phi", type=float, default=0.0, help="coherent-state azimuth (rad)")
    common.add_argument("--g", type=float, help="atom-field coupling (rad/s)")
    common.add_argument("--delta", type=float, help="detuning omega_c - omega_0 (rad/s)")
    common.add_argument("--k", type=float, help="cavity bandwidth (rad/s)")
    common.add_argument("--nbar", type=float, default=0.0, help="mean thermal photon number")
    common.add_argument("--tmin", type=float, help="start of the delta0*t axis")
    common.add_argument("--tmax", type=float, help="end of the delta0*t axis")
    common.add_argument("--steps", type=int, help="number of grid points")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--format", choices=("csv", "svg"), default="csv")

    parser = _Parser(prog="dispcav", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("fig1", parents=[common], help="entropy vs delta0*t for three theta values")
    p2 = sub.add_parser("fig2", parents=[common], help="entropy vs theta at fixed delta0*t")
    p2.add_argument("--t", type=float, default=math.pi / 2, help="fixed delta0*t (default pi/2)")
    sub.add_parser("fig3", parents=[common], help="entropy and squeezing vs delta0*t")
    sub.add_parser("table1", parents=[common], help="occupation probabilities")
    pp = sub.add_parser("point", parents=[common], help="one-row report at (theta, phi, delta0*t)")
    pp.add_argument("--t", type=float, required=True, help="delta0*t")
    pv = sub.add_parser("verify", parents=[common], help="oracle cross-validation")
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--samples", type=int, default=1000)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        theta=args.theta,
        phi=args.phi,
        g=args.g,
        delta=args.delta,
        k=args.k,
        nbar=args.nbar,
        t_min=args.tmin,
        t_max=args.tmax,
        steps=args.steps,
        output_path=args.out,
        format=args.format,
    )
    if cfg.nbar < 0:
        print("dispcav: error: --nbar must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "fig1":
            cmd_fig1(cfg)
        elif args.command == "fig2":
            cmd_fig2(cfg, args.t)
        elif args.command == "fig3":
            cmd_fig3(cfg)
        elif args.command == "table1":
            cmd_table1(cfg)
        elif args.command == "point":
            cmd_point(cfg, args.t)
        elif args.command == "verify":
            return cmd_verify(args.seed, args.samples)
    except UsageError as exc:
        print(f"dispcav: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dispcav: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
