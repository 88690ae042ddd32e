#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure Python/numpy fallback.

Runs the same workloads through both backends (imported directly, so no
environment juggling) and prints a timing table.  The first numba call
includes JIT compilation; a warmup pass absorbs it.

    python benchmarks/bench_backends.py [--heavy] [--repeat N]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from zslab._kernels import python_backend, tables_for
from zslab.abelian import parse_group

try:
    from zslab._kernels import numba_backend
except ImportError:
    numba_backend = None


def _workloads(heavy: bool):
    out = []

    def atoms_job(spec):
        G = parse_group(spec)
        t = tables_for(G)
        sub = np.arange(G.order, dtype=np.int32)
        return f"atoms {spec}", lambda be: be.enumerate_atoms(t.add, t.zero, sub)

    def scan_job(spec, bound):
        G = parse_group(spec)
        t = tables_for(G)
        sub = np.arange(G.order, dtype=np.int32)
        atoms = python_backend.enumerate_atoms(t.add, t.zero, sub)

        def run(be):
            vecs = be.zero_sum_vectors(t.add, t.zero, sub, bound)
            return be.masks_for_closed(vecs, atoms)

        return f"scan+lengths {spec} |B|<={bound}", run

    def products_job(spec, k):
        G = parse_group(spec)
        t = tables_for(G)
        sub = np.arange(G.order, dtype=np.int32)
        atoms = python_backend.enumerate_atoms(t.add, t.zero, sub)
        level = np.unique(atoms, axis=0)
        for _ in range(k - 1):
            cand = (level[:, None, :].astype(np.int16) + atoms[None, :, :]).reshape(
                -1, atoms.shape[1]
            )
            level = np.unique(cand, axis=0)
        perms = t.subset_position_perms(sub)
        return (
            f"U_{k} table {spec} ({len(level)} targets)",
            lambda be: be.target_masks(level, atoms, perms),
        )

    out.append(atoms_job("C2xC4"))
    out.append(atoms_job("C2^2xC4"))
    out.append(scan_job("C5", 15))
    out.append(scan_job("C2^3", 12))
    out.append(products_job("C7", 3))
    if heavy:
        out.append(atoms_job("C2^2xC6"))
        out.append(scan_job("C3^2", 15))
        out.append(products_job("C8", 4))
    return out


def _time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heavy", action="store_true", help="include the larger workloads")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    jobs = _workloads(args.heavy)
    print(f"{'workload':44s} {'python':>10s} {'numba':>10s} {'speedup':>9s}")
    for name, run in jobs:
        t_py, res_py = _time(lambda: run(python_backend), args.repeat)
        if numba_backend is None:
            print(f"{name:44s} {t_py*1e3:9.1f}ms {'n/a':>10s} {'n/a':>9s}")
            continue
        run(numba_backend)  # warmup / JIT
        t_nb, res_nb = _time(lambda: run(numba_backend), args.repeat)
        if isinstance(res_py, list):
            agree = res_py == res_nb
        else:
            agree = {tuple(r) for r in res_py} == {tuple(r) for r in res_nb}
        flag = "" if agree else "  MISMATCH!"
        print(
            f"{name:44s} {t_py*1e3:9.1f}ms {t_nb*1e3:9.1f}ms {t_py/max(t_nb,1e-9):8.1f}x{flag}"
        )


if __name__ == "__main__":
    main()
