#!/usr/bin/env python3
"""Benchmark the compiled condensation kernel against the pure-Python one.

Classifies (Pfaffian + nullity) every diagram of one shape through both
kernels and reports per-diagram timings, then times the public census
engine. Run from the repository root:

    python benchmarks/bench_backends.py --rows 4 --cols 4
"""

import argparse
import time

from cauchon import _kernel_py
from cauchon.census import run_census
from cauchon.diagram import _iter_row_masks

try:
    from cauchon import _kernel as compiled
except ImportError:
    compiled = None


def build_workload(m: int, n: int) -> list[tuple[list[int], list[int]]]:
    out = []
    for masks in _iter_row_masks(m, n):
        rows: list[int] = []
        cols: list[int] = []
        for i, mask in enumerate(masks, start=1):
            for c in range(1, n + 1):
                if not mask >> (c - 1) & 1:
                    rows.append(i)
                    cols.append(c)
        out.append((rows, cols))
    return out


def time_kernel(classify, workload, repeats: int) -> float:
    """Best-of-repeats wall time for one pass over the workload, in seconds."""
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        for rows, cols in workload:
            classify(rows, cols)
        timings.append(time.perf_counter() - start)
    return min(timings)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=4)
    parser.add_argument("--cols", type=int, default=4)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    workload = build_workload(args.rows, args.cols)
    count = len(workload)
    print(f"shape {args.rows}x{args.cols}: {count} diagrams")

    py_time = time_kernel(_kernel_py.classify_cells, workload, args.repeats)
    print(f"pure python : {py_time:8.3f}s  ({1e6 * py_time / count:8.2f} us/diagram)")

    if compiled is None:
        print("compiled    : not built (pip install -e . builds it when Cython is present)")
    else:
        c_time = time_kernel(compiled.classify_cells, workload, args.repeats)
        print(f"compiled    : {c_time:8.3f}s  ({1e6 * c_time / count:8.2f} us/diagram)")
        print(f"speedup     : {py_time / c_time:8.2f}x")

        for rows, cols in workload:
            assert compiled.classify_cells(rows, cols) == _kernel_py.classify_cells(rows, cols)
        print("agreement   : identical results on the whole workload")

    record = run_census(args.rows, args.cols)
    print(
        f"census      : total={record.total} primitive={record.primitive} "
        f"in {record.elapsed:.3f}s (all cores, active kernel)"
    )


if __name__ == "__main__":
    main()
