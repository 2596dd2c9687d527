#!/usr/bin/env python3
"""Benchmark the compiled DP kernel against the pure-Python fallback.

Runs the state-count propagation on a few desk-scale workloads with both
kernels, checks that the results are bit-identical, and prints timings.
Workloads marked "bigint" overflow int64 on purpose, exercising the
arbitrary-precision path of both kernels.

Usage: python benchmarks/benchmark_kernel.py [--repeat K]
"""

import argparse
import time

from quiddity import _kernel_py
from quiddity.oracle import StateSpace
from quiddity.ring import ring

try:
    from quiddity import _kernel
except ImportError:
    _kernel = None

WORKLOADS = (
    # (modulus, domain, steps, label)
    (16, "all", 10, ""),
    (25, "all", 8, ""),
    (27, "all", 12, ""),
    (27, "ideal_only", 14, ""),
    (27, "all", 20, "bigint"),
)


def run(kernel, space, steps):
    S, D = len(space.states), len(space.domain)
    init = [0] * S
    init[space.index[space._pack(1, 0, 0, 1)]] = 1
    t0 = time.perf_counter()
    out = kernel.advance(space.trans, S, D, init, steps)
    return time.perf_counter() - t0, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="take the best of K runs")
    args = parser.parse_args()

    if _kernel is None:
        print("compiled kernel not available; timing the pure-Python kernel only\n")

    header = f"{'workload':<28} {'states':>7} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for modulus, domain, steps, label in WORKLOADS:
        space = StateSpace(ring(modulus), domain)
        best_pure, result_pure = min(
            (run(_kernel_py, space, steps) for _ in range(args.repeat)), key=lambda t: t[0]
        )
        name = f"Z/{modulus} {domain} n={steps}" + (f" [{label}]" if label else "")
        if _kernel is None:
            print(f"{name:<28} {len(space.states):>7} {best_pure:>10.4f} {'n/a':>13} {'n/a':>8}")
            continue
        best_comp, result_comp = min(
            (run(_kernel, space, steps) for _ in range(args.repeat)), key=lambda t: t[0]
        )
        if result_pure != result_comp:
            raise SystemExit(f"kernel results differ on {name}!")
        print(
            f"{name:<28} {len(space.states):>7} {best_pure:>10.4f} {best_comp:>13.4f} "
            f"{best_pure / best_comp:>7.1f}x"
        )
    print("\nall kernel outputs identical" if _kernel is not None else "")


if __name__ == "__main__":
    main()
