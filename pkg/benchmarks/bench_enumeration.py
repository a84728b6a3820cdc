"""Benchmark the two enumeration kernels on the bundled counter program.

Usage: python benchmarks/bench_enumeration.py [--repeat N]

Walks all 352716 schedules with the pure-Python kernel and, when built,
the compiled one, reporting wall time and schedules per second.
"""

from __future__ import annotations

import argparse
import time

from tracetutor import _kernel_py
from tracetutor.explore import encode_plan
from tracetutor.fixtures import counter_program
from tracetutor.model import plan_for

KERNELS = [_kernel_py]
try:
    from tracetutor import _kernel
    KERNELS.append(_kernel)
except ImportError:
    pass


def run_once(kernel, code) -> tuple[int, float]:
    started = time.perf_counter()
    count = sum(1 for _ in kernel.enumerate_runs(
        code.counts, code.spawn_step, code.ops, code.shared_inits,
        code.n_slots))
    return count, time.perf_counter() - started


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timed runs per kernel (best is reported)")
    args = parser.parse_args()

    code = encode_plan(plan_for(counter_program()))
    print(f"{'kernel':<10} {'schedules':>10} {'best time':>10} "
          f"{'schedules/s':>12}")
    timings: dict[str, float] = {}
    for kernel in KERNELS:
        best = float("inf")
        count = 0
        for _ in range(args.repeat):
            count, elapsed = run_once(kernel, code)
            best = min(best, elapsed)
        timings[kernel.NAME] = best
        print(f"{kernel.NAME:<10} {count:>10} {best:>9.2f}s "
              f"{count / best:>12.0f}")
    if len(timings) == 2:
        print(f"\ncompiled speedup: "
              f"{timings['pure'] / timings['compiled']:.2f}x")


if __name__ == "__main__":
    main()
