#!/usr/bin/env python3
"""Benchmark the compiled row-reduction kernels against the pure fallback.

Two views:
 - microbenchmark: raw rref/reduce_rows throughput on enumeration-shaped
   matrices, both backends in-process;
 - end to end: a full stratum-table run in a subprocess per backend
   (HILBZETA_PURE=1 selects the fallback).

Usage: python benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from hilbzeta import _kernels_py

try:
    from hilbzeta import _kernels
except ImportError:
    _kernels = None


def micro(impl, mats, piv_jobs, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for mat, p in mats:
            impl.rref(mat, p)
        for rows, basis, piv, p in piv_jobs:
            impl.reduce_rows(rows, basis, piv, p)
        best = min(best, time.perf_counter() - t0)
    return best


def build_workload(seed=42):
    rng = np.random.default_rng(seed)
    mats = []
    piv_jobs = []
    for p in (2, 3, 5):
        for shape in ((12, 18), (16, 20), (20, 24)):
            for _ in range(40):
                mats.append((rng.integers(0, p, size=shape).astype(np.int64), p))
    for mat, p in mats[::6]:
        basis, piv = _kernels_py.rref(mat, p)
        rows = rng.integers(0, p, size=mat.shape).astype(np.int64)
        piv_jobs.append((rows, basis, piv, p))
    return mats, piv_jobs


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("HILBZETA_PURE", None)
    if pure:
        env["HILBZETA_PURE"] = "1"
    cmd = [
        sys.executable,
        "-m",
        "hilbzeta.cli",
        "strata",
        "axes:3",
        "--q",
        "5",
        "--dmax",
        "5",
        "--json",
    ]
    t0 = time.perf_counter()
    subprocess.run(cmd, check=True, env=env, capture_output=True)
    return time.perf_counter() - t0


def main():
    mats, piv_jobs = build_workload()
    rows = []
    t_py = micro(_kernels_py, mats, piv_jobs)
    rows.append(("python", t_py))
    if _kernels is not None:
        t_cy = micro(_kernels, mats, piv_jobs)
        rows.append(("cython", t_cy))
    print(f"microbenchmark: {len(mats)} rref + {len(piv_jobs)} reduce_rows calls")
    for name, t in rows:
        print(f"  {name:<8} {t * 1000:8.1f} ms")
    if _kernels is not None:
        print(f"  speedup  {t_py / t_cy:8.1f}x")

    print("end to end: strata axes:3 --q 5 --dmax 5 (subprocess, incl. startup)")
    t_pure = end_to_end(pure=True)
    print(f"  python   {t_pure * 1000:8.1f} ms")
    if _kernels is not None:
        t_comp = end_to_end(pure=False)
        print(f"  cython   {t_comp * 1000:8.1f} ms")
        print(f"  speedup  {t_pure / t_comp:8.1f}x")


if __name__ == "__main__":
    main()
