"""Timing comparison of the compiled kernels against the numpy fallback.

Run from the repository root after an editable install:

    python3 benchmarks/benchmark_kernels.py

The workloads mirror the optimizer hot path: the objective (Blaschke
product of a fixed matrix plus its largest singular value), the
numerical-radius objective, and a short multistart search.
"""

import timeit

import numpy as np

from crouzeix_lab import _kernels_py
from crouzeix_lab.seeding import random_complex_gaussian, rng_for

try:
    from crouzeix_lab import _kernels
except ImportError:
    _kernels = None


def time_call(fn, repeats):
    return timeit.timeit(fn, number=repeats) / repeats


def row(label, py_seconds, cy_seconds):
    if cy_seconds is None:
        print(f"{label:<44} {py_seconds * 1e6:>10.1f}          (not built)")
    else:
        print(
            f"{label:<44} {py_seconds * 1e6:>10.1f} {cy_seconds * 1e6:>10.1f} "
            f"{py_seconds / cy_seconds:>7.1f}x"
        )


def main():
    rng = rng_for(2024)
    print(f"{'workload':<44} {'numpy us':>10} {'cython us':>10} {'speedup':>8}")
    for n, d in ((3, 2), (5, 4), (8, 7)):
        phi = np.ascontiguousarray(0.3 * random_complex_gaussian(rng, n))
        u = rng.standard_normal(2 * d)
        py = time_call(lambda: _kernels_py.norm_objective(phi, u), 2000)
        cy = time_call(lambda: _kernels.norm_objective(phi, u), 20000) if _kernels else None
        row(f"norm objective n={n} degree={d}", py, cy)
    for n, d in ((3, 2), (4, 3)):
        phi = np.ascontiguousarray(0.3 * random_complex_gaussian(rng, n))
        u = rng.standard_normal(2 * d)
        py = time_call(lambda: _kernels_py.radius_objective(phi, u), 50)
        cy = time_call(lambda: _kernels.radius_objective(phi, u), 200) if _kernels else None
        row(f"radius objective n={n} degree={d}", py, cy)
    phi = np.ascontiguousarray(0.3 * random_complex_gaussian(rng, 5))
    py = time_call(lambda: _kernels_py.numerical_radius(phi), 100)
    cy = time_call(lambda: _kernels.numerical_radius(phi), 500) if _kernels else None
    row("numerical radius n=5", py, cy)

    # end-to-end: one multistart search on the n=4 benchmark under each backend
    import os
    import subprocess
    import sys
    import textwrap

    script = textwrap.dedent(
        """
        import time
        from crouzeix_lab.extremal_search import SearchConfig, optimize_norm
        from crouzeix_lab.matrix_functions import crabb_matrix
        from crouzeix_lab.numerical_range import range_boundary
        from crouzeix_lab.conformal_map import build_map
        from crouzeix_lab import kernels
        a = crabb_matrix(4)
        the_map = build_map(range_boundary(a, 128), kind="identity")
        t0 = time.perf_counter()
        res = optimize_norm(a, the_map, 3, SearchConfig(starts=20, seed=42))
        print(f"{kernels.BACKEND}: attained={res.attained:.9f} "
              f"in {time.perf_counter() - t0:.2f}s")
        """
    )
    print()
    for backend in ("cython", "python"):
        env = dict(os.environ, CRX_KERNEL=backend)
        out = subprocess.run(
            [sys.executable, "-c", script], env=env, capture_output=True, text=True
        )
        print("search benchmark", out.stdout.strip() or out.stderr.strip())


if __name__ == "__main__":
    main()
