#!/usr/bin/env python3
"""Compare the compiled and numpy kernel backends.

Times the row-wise weighted median kernel and end-to-end L1/L2 training
over a range of feature counts, printing one table row per configuration.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --features 16384 65536 --samples 256
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from sparsecenters import Dataset, train_l1, train_l2
from sparsecenters import kernels


def time_call(fn, repeats: int) -> float:
    fn()  # warm-up: page faults, allocator, branch caches
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def make_dataset(rng, m: int, n: int) -> Dataset:
    X = rng.standard_normal((m, n))
    labels = np.where(np.arange(n) % 2 == 0, 1, -1)
    return Dataset(X, labels)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--features", type=int, nargs="+", default=[4096, 16384, 65536]
    )
    parser.add_argument("--samples", type=int, default=256)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    default_backend = kernels.BACKEND
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("note: compiled backend not built; timing numpy only")

    print(f"{'m':>8} {'n':>6} {'backend':>8} {'kernel_s':>10} "
          f"{'train_l1_s':>11} {'train_l2_s':>11}")
    for m in args.features:
        d = make_dataset(rng, m, args.samples)
        weights = np.full(args.samples, 1.0 / args.samples)
        rows = {}
        for backend in backends:
            kernels.select_backend(backend)
            kernel_s = time_call(
                lambda: kernels.rowwise_weighted_median(d.features, weights),
                args.repeats,
            )
            l1_s = time_call(lambda: train_l1(d, m // 2), args.repeats)
            l2_s = time_call(lambda: train_l2(d, m // 2), args.repeats)
            rows[backend] = kernel_s
            print(f"{m:>8} {args.samples:>6} {backend:>8} {kernel_s:>10.4f} "
                  f"{l1_s:>11.4f} {l2_s:>11.4f}")
        if len(rows) == 2:
            ratio = rows["numpy"] / rows["cython"]
            print(f"{'':>8} {'':>6} {'speedup':>8} {ratio:>9.2f}x")
    kernels.select_backend(default_backend)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
