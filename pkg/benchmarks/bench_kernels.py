"""Benchmark the numba kernels against the numpy/plain-Python fallbacks.

Runs each hot kernel on a representative workload under both backends and
prints per-call times plus speedup. JIT compilation is warmed up before
timing.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time
from random import Random

import numpy as np

from quads import _kernels_numba as knb
from quads import _kernels_numpy as knp
from quads.search import _bound_remaining


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    rng = Random(2025)

    cards_small = np.array(sorted(rng.sample(range(1 << 8), 48)), dtype=np.int64)
    cards_big = np.array(sorted(rng.sample(range(1 << 14), 1500)), dtype=np.int64)
    member = np.zeros(1 << 8, dtype=np.uint8)
    member[cards_small] = 1
    probe = next(c for c in range(1 << 8) if not member[c])
    inside = np.array(sorted(rng.sample(range(1 << 12), 2048)), dtype=np.int64)
    outside = np.array(
        sorted(set(range(1 << 12)) - set(inside.tolist())), dtype=np.int64
    )
    rem12 = _bound_remaining(12)
    rem10 = _bound_remaining(10)
    prefix = np.array([0, 1, 2, 4], dtype=np.int64)

    yield ("pair_xor_collisions l=48 n=8",
           lambda k: k.pair_xor_collisions(cards_small, 8))
    yield ("pair_xor_collisions l=1500 n=14",
           lambda k: k.pair_xor_collisions(cards_big, 14))
    yield ("added_quad_hits l=48", lambda k: k.added_quad_hits(cards_small, member, probe))
    yield ("xor_histogram_cross 2048x2048 n=12",
           lambda k: k.xor_histogram_cross(inside, outside, 12))
    yield ("max_quads_dfs deck=16 l=12",
           lambda k: k.max_quads_dfs(4, 12, rem12, 10**9))
    yield ("conjecture_dfs deck=16 l=10",
           lambda k: k.conjecture_dfs(4, 10, 4, 18, rem10, 10**9))
    yield ("canonical_subtree l=10",
           lambda k: k.canonical_subtree(prefix, 10, 30, 10**9))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel':42s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for label, call in workloads():
        call(knb)  # JIT warmup
        t_nb = timeit(lambda: call(knb), args.repeat)
        t_np = timeit(lambda: call(knp), args.repeat)
        print(f"{label:42s} {t_nb*1e3:9.3f}ms {t_np*1e3:9.3f}ms {t_np/t_nb:7.1f}x")


if __name__ == "__main__":
    main()
