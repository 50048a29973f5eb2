#!/usr/bin/env python3
"""Benchmark the compiled Felsch kernel against the pure Python twin.

Runs identical enumerations through both kernels, checks that the raw
outputs agree byte for byte, and prints a timing table.  The default set
stays under a minute even on the pure path; ``--heavy`` adds the largest
catalog realization.

Usage:  python benchmarks/bench_kernels.py [--heavy] [--repeat N]
"""

import argparse
import time

import numpy as np

from etanu import _felsch_py
from etanu.actions import nu_setup, trivial_actions
from etanu.catalog import cyclic, dihedral, klein4, quaternion8, sym
from etanu.coset import _conjugate_buckets
from etanu.eta import eta_presentation

try:
    from etanu import _felsch_c
except ImportError:
    _felsch_c = None


def presentation_inputs(presentation):
    ncols = 2 * presentation.generator_count
    words, buckets = _conjugate_buckets(presentation.relators, ncols)
    return ncols, words, buckets


def run_kernel(kernel, inputs, repeat):
    ncols, words, buckets = inputs
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = kernel.run(ncols, words, buckets, [], 2_000_000)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--heavy", action="store_true", help="include the largest case")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    args = parser.parse_args()

    cases = [
        ("trivial(C6,C6)", eta_presentation(trivial_actions(cyclic(6), cyclic(6)))),
        ("nu(V4)", eta_presentation(nu_setup(klein4()))),
        ("nu(S3)", eta_presentation(nu_setup(sym(3)))),
        ("nu(D8)", eta_presentation(nu_setup(dihedral(8)))),
    ]
    if args.heavy:
        cases.append(("nu(Q8)", eta_presentation(nu_setup(quaternion8()))))

    if _felsch_c is None:
        print("compiled kernel not built; nothing to compare")
        return 1

    header = f"{'case':16} {'rows':>6} {'compiled':>10} {'pure':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, presentation in cases:
        inputs = presentation_inputs(presentation)
        t_c, out_c = run_kernel(_felsch_c, inputs, args.repeat)
        t_py, out_py = run_kernel(_felsch_py, inputs, 1)
        assert out_c[0] == out_py[0] == "complete"
        assert np.array_equal(np.asarray(out_c[1]), np.asarray(out_py[1], dtype=np.int32))
        rows = int((np.asarray(out_c[2]) == np.arange(len(out_c[2]))).sum())
        print(f"{label:16} {rows:>6} {t_c:>9.3f}s {t_py:>9.3f}s {t_py / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
