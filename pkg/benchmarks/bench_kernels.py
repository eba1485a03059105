"""Compare the compiled and numpy term-application kernels.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Workloads are the Fock image of ``z_1^1`` (4 factors) and the
``Omega_0`` image of ``x`` (3 factors).  Each kernel is checked against the
other before timing.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from qmatball import polmat, repcat
from qmatball.qcore import Space, backend
from qmatball.qcore.operator import CompiledOperator


def workloads():
    fock = repcat.fock_rep()
    om = repcat.coherent_rep(0.0)
    yield "fock z_1^1, N=8", fock.images[polmat.Gen(1, 1)], 8
    yield "omega_0 x, N=16", om(polmat.element_x()), 16
    yield "omega_0 z_1^1, N=24", om.images[polmat.Gen(1, 1)], 24


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--q", type=float, default=0.5)
    args = ap.parse_args(argv)
    impls = backend.kernels()
    print(f"available kernels: {', '.join(sorted(impls))}; active: {backend.BACKEND}")
    rng = np.random.default_rng(0)
    for label, expr, N in workloads():
        space = Space(expr.kinds, N)
        op = CompiledOperator(expr, args.q, space)
        v = (rng.standard_normal(space.size) + 1j * rng.standard_normal(space.size))
        dims, *a = op.kernel_args
        outs = {k: f(v, dims, *a) for k, f in impls.items()}
        ref = outs["python"]
        for k, out in outs.items():
            err = float(np.max(np.abs(out - ref)))
            if err > 1e-12:
                raise SystemExit(f"{k} disagrees with the numpy kernel on {label}: {err:.3g}")
        times = {k: min(timeit.repeat(lambda f=f: f(v, dims, *a), number=1, repeat=args.repeat))
                 for k, f in impls.items()}
        line = ", ".join(f"{k} {1e3 * t:.3f} ms" for k, t in sorted(times.items()))
        if "cython" in times:
            line += f", speed-up x{times['python'] / times['cython']:.1f}"
        print(f"{label:<22} dim {space.size:>7}, {len(expr.terms)} terms: {line}")


if __name__ == "__main__":
    main()
