#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

Each kernel is run on both backends with identical inputs; outputs are
compared for equality before any timing is reported.

Usage:
    python benchmarks/bench_kernels.py [--repeat R] [--dim N] [--json]
"""

from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from herdkit import kernels
from herdkit.coalg import heap_algebra
from herdkit.corpus import direct_product, cyclic, groups_up_to, quaternion
from herdkit.setcore import group_to_heap


def _timeit(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _cases(dim: int, seed: int):
    rng = np.random.default_rng(seed)
    a = rng.integers(-9, 10, size=(dim, dim)).astype(np.int64)
    b = rng.integers(-9, 10, size=(dim, dim)).astype(np.int64)
    # difference of two 0/1 maps: the shape of every coequalizer we row reduce
    eye = np.eye(dim, dtype=np.int64)
    coeq = eye[rng.permutation(dim)] - eye[rng.integers(0, dim, size=dim)]
    # small dense rank-deficient matrix (larger ones overflow int64 and fall back)
    dense = rng.integers(-3, 4, size=(16, 8)) @ rng.integers(-3, 4, size=(8, 16))
    heap = group_to_heap(groups_up_to(8)[-1]).q
    g = direct_product(cyclic(2), cyclic(4), "C2xC4")
    perm = rng.permutation(g.size)
    inv = np.argsort(perm)
    relabelled = inv[g.mul[perm[:, None], perm[None, :]]]
    herd = heap_algebra(group_to_heap(quaternion()))
    qn = herd.q.num  # 8 x 512 structure constants of the Q8 herd
    return {
        "matmul": lambda: kernels.matmul(a, b),
        "matmul (herd tensor)": lambda: kernels.matmul(np.ascontiguousarray(qn.T), qn),
        "rref (coequalizer)": lambda: kernels.rref(coeq)[0],
        "rref (dense 16)": lambda: kernels.rref(dense)[0],
        "heap_scan (order 8)": lambda: kernels.heap_scan(heap),
        "iso_search (C2xC4)": lambda: kernels.iso_search(g.mul, relabelled),
    }


def _same(x, y) -> bool:
    if x is None or y is None:
        return x is y
    return np.array_equal(np.asarray(x, dtype=object), np.asarray(y, dtype=object))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--dim", type=int, default=96)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    if not kernels.HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1

    cases = _cases(args.dim, args.seed)
    rows = []
    for name, fn in cases.items():
        with kernels.using("numba"):
            ref = fn()  # also triggers compilation
            t_nb = _timeit(fn, args.repeat)
        with kernels.using("numpy"):
            out = fn()
            t_np = _timeit(fn, args.repeat)
        rows.append({"kernel": name, "numba_s": t_nb, "numpy_s": t_np,
                     "speedup": t_np / t_nb if t_nb else float("inf"), "equal": _same(ref, out)})

    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'kernel':<24}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}  equal")
        for r in rows:
            print(f"{r['kernel']:<24}{1e3 * r['numba_s']:>12.3f}{1e3 * r['numpy_s']:>12.3f}"
                  f"{r['speedup']:>10.1f}  {r['equal']}")
    return 0 if all(r["equal"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
