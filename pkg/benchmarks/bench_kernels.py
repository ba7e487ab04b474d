"""Benchmark the compiled kernels against the pure-numpy fallback.

Run directly::

    python benchmarks/bench_kernels.py

The script times each hot kernel on both backends in-process (the numpy
fallback implementations are importable regardless of the env flag), so a
single run produces the full comparison table. Compilation time is
excluded by a warm-up call.
"""

import math
import time

import numpy as np

from extgevrey import _kernels as K


def _time(fn, *args, repeat=5):
    fn(*args)  # warm-up (triggers JIT compilation on the numba path)
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rows = []

    x = np.logspace(-6, 300, 200_000)
    rows.append(("w0_grid (200k pts)",
                 _time(K.w0_grid_njit, x) if K.NUMBA_ENABLED else None,
                 _time(K.w0_grid_numpy, x)))

    lnk = np.log(np.logspace(0, 10, 4_000))
    args = (lnk, 0.0, 1.0, 2.0)
    rows.append(("assoc_sup_grid (4k pts)",
                 _time(K.assoc_sup_grid_njit, *args) if K.NUMBA_ENABLED else None,
                 _time(K.assoc_sup_grid_numpy, *args)))

    lnk2 = np.log(np.logspace(0, 10, 20_000))
    args2 = (lnk2, 1.0, 2.0)
    rows.append(("counting_sum_grid (20k pts)",
                 _time(K.counting_sum_grid_njit, *args2) if K.NUMBA_ENABLED else None,
                 _time(K.counting_sum_grid_numpy, *args2)))

    print(f"numba backend available: {K.NUMBA_ENABLED}")
    print(f"{'kernel':<30} {'njit':>12} {'numpy':>12} {'speedup':>9}")
    for name, tj, tn in rows:
        if tj is None:
            print(f"{name:<30} {'n/a':>12} {tn * 1e3:>10.2f}ms {'n/a':>9}")
        else:
            print(f"{name:<30} {tj * 1e3:>10.2f}ms {tn * 1e3:>10.2f}ms "
                  f"{tn / tj:>8.1f}x")


if __name__ == "__main__":
    main()
