#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernels against the numpy fallback.

Runs the seeded oracle workload twice: once in this process (numba unless
LHOM_NO_NUMBA is set) and once in a subprocess with LHOM_NO_NUMBA=1.

Usage: python benchmarks/bench_kernels.py [--count N] [--size N] [--seed S]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

import families  # noqa: E402

from lhomdel import _kernels, oracle  # noqa: E402


def workload(seed, count, size):
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        h = families.random_target(rng, rng.randint(2, 5))
        cases.append((h, families.random_instance(rng, h, size)))
    # warm up the jit (or the fallback) outside the timed region
    oracle.oracle_vd(*cases[0])
    t0 = time.perf_counter()
    checksum = 0
    for h, inst in cases:
        checksum += oracle.oracle_vd(h, inst).cost
        checksum += oracle.oracle_ed(h, inst).cost
    return time.perf_counter() - t0, checksum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--size", type=int, default=9)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true",
                    help="print a bare JSON result (used by the subprocess)")
    args = ap.parse_args()

    elapsed, checksum = workload(args.seed, args.count, args.size)
    label = "numba" if _kernels.using_numba() else "numpy fallback"
    if args.json:
        print(json.dumps({"elapsed": elapsed, "checksum": checksum,
                          "kernel": label}))
        return

    print(f"{args.count} targets, instance size {args.size}, "
          f"seed {args.seed}")
    print(f"{label:>16}: {elapsed:8.3f}s")
    if _kernels.using_numba():
        env = dict(os.environ, LHOM_NO_NUMBA="1")
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--json",
             "--count", str(args.count), "--size", str(args.size),
             "--seed", str(args.seed)],
            env=env, capture_output=True, text=True, check=True)
        other = json.loads(out.stdout)
        assert other["checksum"] == checksum, "kernel results diverge"
        print(f"{other['kernel']:>16}: {other['elapsed']:8.3f}s")
        print(f"{'speedup':>16}: {other['elapsed'] / elapsed:8.2f}x")


if __name__ == "__main__":
    main()
