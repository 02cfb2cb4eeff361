"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeats 5]

Prints one row per workload with the best time of each backend and the
speed-up, plus the largest absolute difference between their outputs.
"""
import argparse
import math
import time

import numpy as np

from nmlcause import _fallback

try:
    from nmlcause import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - start)
    return best, value


def workloads(rng):
    x20 = rng.integers(0, 20, 100_000)
    y20 = rng.integers(0, 20, 100_000)
    # near-continuous columns, like benchmark pairs read as categories
    xw = rng.integers(0, 5_000, 10_000)
    yw = (xw + rng.integers(0, 3_000, 10_000)) % 5_000
    sizes = rng.integers(1, 2_000, 500)
    wide = np.bincount(rng.integers(0, 100_000, 1_000_000))
    return [
        ("log2 R(2, 10^7)", lambda k: k.log2_normalizer(2, 10_000_000, 10)),
        ("log2 R(20, 10^5)", lambda k: k.log2_normalizer(20, 100_000, 10)),
        ("log2 R(10^5, 10^6)", lambda k: k.log2_normalizer(100_000, 1_000_000, 10)),
        ("log2 R(50, n) x500 sizes", lambda k: float(np.sum(k.log2_normalizers(50, sizes, 10)))),
        ("slices n=10^5 m=20", lambda k: math.fsum(k.slice_codelengths(y20, x20, 20, 20, 10))),
        ("slices n=10^4 m=5000", lambda k: math.fsum(k.slice_codelengths(yw, xw, 5_000, 5_000, 10))),
        ("ml_bits m=10^5", lambda k: k.ml_bits(wide)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    if _kernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'workload':28s} {'python s':>10s} {'cython s':>10s} {'speed-up':>9s} {'|diff|':>9s}")
    for name, job in workloads(rng):
        t_py, v_py = best_of(lambda: job(_fallback), args.repeats)
        if _kernels is None:
            print(f"{name:28s} {t_py:10.5f}")
            continue
        t_cy, v_cy = best_of(lambda: job(_kernels), args.repeats)
        print(f"{name:28s} {t_py:10.5f} {t_cy:10.5f} {t_py / t_cy:9.1f} {abs(v_py - v_cy):9.2e}")


if __name__ == "__main__":
    main()
