"""Time each batch kernel under the numba and numpy implementations.

Usage: python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 5]

Both families are taken from ``kernels.IMPLEMENTATIONS`` regardless of the
DISPCAV_NUMBA flag. The first numba call is a warm-up (compile or cache load)
and is reported separately.
"""

import argparse
import time

import numpy as np

from dispcav import kernels
from dispcav._jit import HAVE_NUMBA
from dispcav.spin_model import collective_product_ops


def _inputs(n, rng):
    z = rng.normal(size=(n, 4)) + 1j * rng.normal(size=(n, 4))
    psis = np.ascontiguousarray(z / np.linalg.norm(z, axis=1, keepdims=True))
    ops = np.ascontiguousarray(np.array(collective_product_ops()))
    means, second = kernels.IMPLEMENTATIONS["numpy"]["spin_moments"](psis, ops)
    rho = kernels.IMPLEMENTATIONS["numpy"]["reduce_pure"](psis, True)
    lams = np.clip(kernels.IMPLEMENTATIONS["numpy"]["eigvalsh2"](rho), 0.0, 1.0)
    h = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = np.ascontiguousarray(h + h.conj().T)
    evals, evecs = np.linalg.eigh(h)
    return {
        "eigh_jacobi": (h, 1e-15, 60),
        "reduce_pure": (psis, True),
        "eigvalsh2": (rho,),
        "entropy_bits": (lams,),
        "spin_moments": (psis, ops),
        "squeezing_from_moments": (means, second, 1e-9),
        "evolve_many": (psis[0].copy(), evals, np.ascontiguousarray(evecs), np.linspace(0, 10, n)),
    }


def _best(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20000, help="batch size")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    inputs = _inputs(args.n, np.random.default_rng(0))
    families = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"batch size {args.n}, best of {args.repeat}")
    print(f"{'kernel':<24}{'numpy [ms]':>12}{'numba [ms]':>12}{'warm-up [ms]':>14}{'speedup':>10}")
    for name, call_args in inputs.items():
        row = {}
        warm = float("nan")
        for fam in families:
            fn = kernels.IMPLEMENTATIONS[fam][name]
            if fam == "numba":
                start = time.perf_counter()
                fn(*call_args)
                warm = time.perf_counter() - start
            row[fam] = _best(fn, call_args, args.repeat)
        nb = row.get("numba", float("nan"))
        print(f"{name:<24}{row['numpy'] * 1e3:>12.3f}{nb * 1e3:>12.3f}{warm * 1e3:>14.1f}{row['numpy'] / nb:>10.1f}")


if __name__ == "__main__":
    main()
