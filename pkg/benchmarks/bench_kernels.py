#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the Ryser permanent and the naive immanant sum for growing matrix
sizes on both backends and prints a comparison table.  Run after an
editable install:

    python3 benchmarks/bench_kernels.py [--max-permanent 16] [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from bosonic_rb import _kernels_py
from bosonic_rb.immanants import _char_vector, _perm_table

try:
    from bosonic_rb import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_permanent(max_d, repeats):
    rng = np.random.default_rng(1)
    print(f"{'d':>4} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    for d in range(4, max_d + 1, 2):
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        t_py = _time(lambda: _kernels_py.permanent_ryser(a), repeats)
        if _compiled is None:
            print(f"{d:>4} {t_py:>12.3e} {'n/a':>12} {'n/a':>9}")
            continue
        t_cy = _time(lambda: _compiled.permanent_ryser(a), repeats)
        assert abs(_compiled.permanent_ryser(a) - _kernels_py.permanent_ryser(a)) < 1e-9 * (
            1 + abs(_kernels_py.permanent_ryser(a))
        )
        print(f"{d:>4} {t_py:>12.3e} {t_cy:>12.3e} {t_py / t_cy:>8.1f}x")


def bench_immanant(max_d, repeats):
    rng = np.random.default_rng(2)
    print(f"{'d':>4} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    for d in range(3, max_d + 1):
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        kappa = (d - 1, 1)
        perms, _ = _perm_table(d)
        chars = _char_vector(kappa, d)
        t_py = _time(lambda: _kernels_py.immanant_sum(a, perms, chars), repeats)
        if _compiled is None:
            print(f"{d:>4} {t_py:>12.3e} {'n/a':>12} {'n/a':>9}")
            continue
        t_cy = _time(lambda: _compiled.immanant_sum(a, perms, chars), repeats)
        assert abs(
            _compiled.immanant_sum(a, perms, chars)
            - _kernels_py.immanant_sum(a, perms, chars)
        ) < 1e-9 * (1 + abs(_kernels_py.immanant_sum(a, perms, chars)))
        print(f"{d:>4} {t_py:>12.3e} {t_cy:>12.3e} {t_py / t_cy:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-permanent", type=int, default=16)
    parser.add_argument("--max-immanant", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _compiled is None:
        print("compiled kernels not available; timing the fallback only\n")
    print("== Ryser permanent ==")
    bench_permanent(args.max_permanent, args.repeats)
    print("\n== immanant permutation sum (hook shape) ==")
    bench_immanant(args.max_immanant, args.repeats)


if __name__ == "__main__":
    main()
