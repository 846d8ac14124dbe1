"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row checks that both backends return identical arrays before timing.
JIT compilation is excluded (one warm-up call per kernel).
"""
import argparse
import time

import numpy as np

from hauscover import kernels
from hauscover.generators import cantor_set


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def metric(n, seed=0):
    rng = np.random.default_rng(seed)
    w = np.triu(rng.uniform(0.05, 1.0, (n, n)), 1)
    return w + w.T


def cases(quick):
    for n in ((30, 100) if quick else (30, 100, 300)):
        d = metric(n)
        yield f"triangle_excess n={n}", kernels.triangle_excess_jit, kernels.triangle_excess_np, (d,)
    for n in ((8, 10) if quick else (8, 10, 12)):
        d = metric(n)
        yield f"subset_costs n={n}", kernels.subset_costs_jit, kernels.subset_costs_np, (d, 0.7, 0.05, np.inf)
        table = kernels.subset_costs_jit(d, 0.7, 0.05, np.inf)
        yield f"best_partition n={n}", kernels.best_partition_jit, kernels.best_partition_np, (table, n)
    for depth in ((6, 8) if quick else (6, 8, 10)):
        C = cantor_set(depth)
        a, b = C.lefts.copy(), C.rights.copy()
        yield (f"grouping_dp m={len(C)}", kernels.grouping_dp_jit, kernels.grouping_dp_np,
               (a, b, 0.5, 0.01))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    print(f"{'kernel':28} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}  equal")
    for label, jit, np_fn, fargs in cases(args.quick):
        jit(*fargs)  # compile
        tj, oj = best_of(lambda: jit(*fargs), args.repeat)
        tn, on = best_of(lambda: np_fn(*fargs), args.repeat)
        print(f"{label:28} {tj * 1e3:10.2f} {tn * 1e3:10.2f} {tn / tj:8.1f}  {same(oj, on)}")


if __name__ == "__main__":
    main()
