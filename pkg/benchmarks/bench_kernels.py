#!/usr/bin/env python3
"""Compare the numba and numpy paths of the two hot kernels.

    python3 benchmarks/bench_kernels.py [--sizes 10000,100000,1000000] [--repeat 5] [--csv out.csv]

Both paths are called directly, so one process times both regardless of
KDVSHARP_DISABLE_NUMBA.  The first numba call (compilation or cache load)
is excluded.  FFT-based routines (spectral propagation, lattice
convolutions) are shared by both paths and not timed here.
"""

import argparse
import csv
import sys
import time

import numpy as np

from kdvsharp import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_airy(n, repeat, rng):
    z = rng.uniform(-60.0, 60.0, n)
    rows = [("airy_eval", "numpy", n, best_of(lambda: K.airy_eval_numpy(z), repeat))]
    if K.numba_available:
        K.airy_eval_numba(z[:8])
        rows.append(("airy_eval", "numba", n, best_of(lambda: K.airy_eval_numba(z), repeat)))
        a1, _, _ = K.airy_eval_numba(z)
        a2, _, _ = K.airy_eval_numpy(z)
        rows.append(("airy_eval", "max_abs_diff", n, float(np.max(np.abs(a1 - a2)))))
    return rows


def bench_quadrature(n, repeat, rng):
    # n source points against 64 targets, the shape used by the extremizer
    y = np.linspace(-1.0, 1.0, n)
    f = rng.standard_normal(n)
    fr, fi = f, np.zeros(n)
    pts = np.linspace(-1.2, -0.8, 64)
    args = (pts, y, fr, fi, 1.0, 1.0, 2.0 / n, np.inf, 1.0)
    rows = [("kernel_quadrature", "numpy", n, best_of(lambda: K.kernel_quadrature_numpy(*args), repeat))]
    if K.numba_available:
        K.kernel_quadrature_numba(*args)
        rows.append(("kernel_quadrature", "numba", n, best_of(lambda: K.kernel_quadrature_numba(*args), repeat)))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10000,100000,1000000")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = []
    for n in sizes:
        rows += bench_airy(n, args.repeat, rng)
        rows += bench_quadrature(max(n // 10, 16), args.repeat, rng)
    print(f"numba available: {K.numba_available}")
    print(f"{'kernel':<20}{'path':<14}{'n':>10}{'value':>14}")
    for r in rows:
        print(f"{r[0]:<20}{r[1]:<14}{r[2]:>10}{r[3]:>14.4g}")
    by = {(r[0], r[1], r[2]): r[3] for r in rows}
    for (k, p, n), v in sorted(by.items()):
        if p == "numba":
            print(f"speedup {k} n={n}: {by[(k, 'numpy', n)] / v:.1f}x")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kernel", "path", "n", "value"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
