"""Compare the numba and pure-numpy kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Times the Gegenbauer table, a single-series sum, and Gram-matrix assembly
for a spatio-temporal series (the inner loop of ``certify``). Compilation
is triggered once before timing so the numba column measures steady state.
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from dimwalk import _kernels
from dimwalk.gegenbauer import GegenbauerBasis
from dimwalk.pdcheck import gram_matrix, sample_sphere, series_kernel
from dimwalk.series import SpatioTemporalSeries
from dimwalk.temporal import TemporalPD


def best_of(fn, repeat):
    fn()  # warm up (and compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    rng = np.random.default_rng(0)
    x = rng.uniform(-1, 1, 200_000)
    coeffs = rng.dirichlet(np.ones(61))
    series = SpatioTemporalSeries(
        GegenbauerBasis(1.0),
        [TemporalPD.of("exponential", 1.0 + n / 10, 1.0 / 31) for n in range(31)],
    )
    cfg = sample_sphere(3, 400, seed=1, times=True)
    f = series_kernel(series)
    return {
        "table(lam=1.5, n=40, 200k pts)": lambda: _kernels.gegenbauer_table(1.5, 40, x),
        "series_sum(N=60, 200k pts)": lambda: _kernels.series_sum(coeffs, 1.0, x),
        "gram(N=30 temporal, 400 pts)": lambda: gram_matrix(f, cfg),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rows = []
    for name, fn in cases().items():
        row = {"case": name}
        for b in backends:
            with _kernels.use_backend(b):
                row[b] = best_of(fn, args.repeat)
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'case':34s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for row in rows:
        line = f"{row['case']:34s}" + "".join(f"{row[b] * 1e3:10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{row['numpy'] / row['numba']:11.2f}x"
        print(line)


if __name__ == "__main__":
    main()
