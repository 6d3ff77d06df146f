"""Hot integer kernels, each in a numba and a pure-numpy flavour.

Every kernel works on exact integers. The numba versions run on ``int64``
and report overflow instead of wrapping; callers then rerun the numpy version,
which promotes to Python ints (``dtype=object``) whenever a bound check says
``int64`` could overflow.

Backend selection:

    HERDKIT_DISABLE_NUMBA=1   force the numpy path
    HERDKIT_THREADS=N         cap numba's thread pool

``set_backend("numpy" | "numba")`` switches at runtime (benchmarks and the
cross-check tests use it).
"""

from __future__ import annotations

import contextlib
import math
import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


# |x| below this always survives one multiply-add of two such products in int64
INT64_SAFE = 1 << 62

_TRUTHY = {"1", "true", "yes", "on"}

_backend = "numba" if HAVE_NUMBA and os.environ.get("HERDKIT_DISABLE_NUMBA", "").lower() not in _TRUTHY else "numpy"

if HAVE_NUMBA and os.environ.get("HERDKIT_THREADS"):
    try:
        numba.set_num_threads(max(1, min(int(os.environ["HERDKIT_THREADS"]), numba.config.NUMBA_NUM_THREADS)))
    except ValueError:
        pass


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _backend = name


@contextlib.contextmanager
def using(name: str):
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.abs(a).max())


def to_compact(a: np.ndarray) -> np.ndarray:
    """Downcast an object array of ints to int64 when every entry fits."""
    if a.dtype == object:
        if maxabs(a) < INT64_SAFE:
            return a.astype(np.int64)
        return a
    return a.astype(np.int64, copy=False)


def _obj(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


# ---------------------------------------------------------------------------
# matrix product
# ---------------------------------------------------------------------------

@njit(cache=True)
def _matmul_nb(a, b):
    m, k = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), np.int64)
    for i in range(m):
        for t in range(k):
            x = a[i, t]
            if x != 0:
                for j in range(n):
                    out[i, j] += x * b[t, j]
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product ``a @ b``."""
    k = a.shape[1]
    if a.dtype != object and b.dtype != object and maxabs(a) * maxabs(b) * max(k, 1) < INT64_SAFE:
        if _backend == "numba":
            return _matmul_nb(np.ascontiguousarray(a), np.ascontiguousarray(b))
        return a @ b
    return to_compact(_obj(a) @ _obj(b))


def einsum(spec: str, *arrays: np.ndarray) -> np.ndarray:
    """Exact ``np.einsum``; falls back to Python ints if int64 could overflow."""
    inputs, output = spec.split("->")
    sizes: dict[str, int] = {}
    for labels, arr in zip(inputs.split(","), arrays):
        for lab, size in zip(labels, arr.shape):
            sizes[lab] = size
    summed = set("".join(inputs.split(","))) - set(output)
    bound = 1
    for arr in arrays:
        bound *= maxabs(arr)
    for lab in summed:
        bound *= max(sizes[lab], 1)
    if bound < INT64_SAFE and all(arr.dtype != object for arr in arrays):
        return np.einsum(spec, *arrays, optimize="greedy")
    return to_compact(np.einsum(spec, *[_obj(a) for a in arrays], optimize="greedy"))


# ---------------------------------------------------------------------------
# fraction-free row reduction
# ---------------------------------------------------------------------------
#
# Produces an integer matrix row-equivalent to the input, in reduced echelon
# shape: every pivot column is zero except for a positive pivot, and every row
# is divided by its content. Dividing each pivot row by its pivot gives the
# rational RREF.

@njit(cache=True)
def _gcd_nb(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _rref_nb(a):
    m, n = a.shape
    pivots = np.empty(min(m, n), np.int64)
    npiv = 0
    r = 0
    limit = 4.0e18
    for c in range(n):
        if r == m:
            break
        p = -1
        for i in range(r, m):
            if a[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(n):
                t = a[r, j]
                a[r, j] = a[p, j]
                a[p, j] = t
        if a[r, c] < 0:
            for j in range(n):
                a[r, j] = -a[r, j]
        g = 0
        for j in range(n):
            g = _gcd_nb(g, a[r, j])
        if g > 1:
            for j in range(n):
                a[r, j] //= g
        pv = a[r, c]
        rmax = 0.0
        for j in range(n):
            v = abs(float(a[r, j]))
            if v > rmax:
                rmax = v
        for i in range(m):
            f = a[i, c]
            if i == r or f == 0:
                continue
            imax = 0.0
            for j in range(n):
                v = abs(float(a[i, j]))
                if v > imax:
                    imax = v
            if float(pv) * imax + abs(float(f)) * rmax > limit:
                return a, pivots[:npiv], False
            g = 0
            for j in range(n):
                a[i, j] = pv * a[i, j] - f * a[r, j]
                g = _gcd_nb(g, a[i, j])
            if g > 1:
                for j in range(n):
                    a[i, j] //= g
        pivots[npiv] = c
        npiv += 1
        r += 1
    return a, pivots[:npiv], True


def _rref_np(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        if a[r, c] < 0:
            a[r] = -a[r]
        g = int(np.gcd.reduce(a[r])) if a.dtype != object else _content(a[r])
        if g > 1:
            a[r] //= g
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            pv = a[r, c]
            sub = a[others]
            if a.dtype != object and int(pv) * maxabs(sub) + maxabs(sub[:, c]) * maxabs(a[r]) >= INT64_SAFE:
                a = a.astype(object)
                sub = a[others]
                pv = a[r, c]
            sub = pv * sub - sub[:, c : c + 1] * a[r]
            if a.dtype == object:
                gs = np.array([_content(row) for row in sub], dtype=object)
            else:
                gs = np.gcd.reduce(sub, axis=1)
            gs[gs == 0] = 1
            a[others] = sub // gs[:, None]
        pivots.append(c)
        r += 1
    return a, pivots


def _content(row: np.ndarray) -> int:
    return math.gcd(*(int(x) for x in row))


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Integer reduced echelon form of ``a`` and its pivot columns.

    The input is not modified.
    """
    if a.dtype != object and _backend == "numba":
        out, piv, ok = _rref_nb(np.array(a, dtype=np.int64, order="C"))
        if ok:
            return out, [int(p) for p in piv]
    work = a.copy() if a.dtype == object else np.array(a, dtype=np.int64)
    out, piv = _rref_np(work)
    return to_compact(out), piv


# ---------------------------------------------------------------------------
# heap axiom scan
# ---------------------------------------------------------------------------

@njit(cache=True)
def _heap_scan_nb(q):
    n = q.shape[0]
    out = np.full(3, -1, np.int64)
    idx = 0
    for a in range(n):
        for b in range(n):
            for c in range(n):
                x = q[a, b, c]
                for d in range(n):
                    for e in range(n):
                        if q[x, d, e] != q[a, b, q[c, d, e]]:
                            out[0] = idx
                            break
                        idx += 1
                    if out[0] >= 0:
                        break
                if out[0] >= 0:
                    break
            if out[0] >= 0:
                break
        if out[0] >= 0:
            break
    for a in range(n):
        for b in range(n):
            if out[1] < 0 and q[a, b, b] != a:
                out[1] = a * n + b
            if out[2] < 0 and q[a, a, b] != b:
                out[2] = a * n + b
    return out


def _heap_scan_np(q: np.ndarray) -> np.ndarray:
    n = q.shape[0]
    r = np.arange(n)
    lhs = q[q[:, :, :, None, None], r[:, None], r]
    rhs = q[r[:, None, None, None, None], r[None, :, None, None, None], q[None, None]]
    out = np.full(3, -1, np.int64)
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        out[0] = bad[0]
    bad = np.flatnonzero(q[r[:, None], r[None, :], r[None, :]] != r[:, None])
    if bad.size:
        out[1] = bad[0]
    bad = np.flatnonzero(q[r[:, None], r[:, None], r[None, :]] != r[None, :])
    if bad.size:
        out[2] = bad[0]
    return out


def heap_scan(q: np.ndarray) -> np.ndarray:
    """First failing flat index for para-associativity, q(a,b,b)=a and q(a,a,b)=b.

    Index ``-1`` means the law holds. Para-associativity indices run over
    ``(a,b,c,d,e)`` row-major, the unit laws over ``(a,b)``.
    """
    q = np.ascontiguousarray(q, dtype=np.int64)
    if q.shape[0] == 0:
        return np.full(3, -1, np.int64)
    if _backend == "numba":
        return _heap_scan_nb(q)
    return _heap_scan_np(q)


# ---------------------------------------------------------------------------
# isomorphism search between multiplication tables
# ---------------------------------------------------------------------------

@njit(cache=True)
def _iso_nb(m1, m2):
    n = m1.shape[0]
    phi = np.full(n, -1, np.int64)
    used = np.zeros(n, np.bool_)
    nxt = np.zeros(n + 1, np.int64)
    pos = 0
    while pos >= 0:
        if pos == n:
            return phi
        placed = False
        c = nxt[pos]
        while c < n:
            if not used[c]:
                phi[pos] = c
                ok = True
                for a in range(pos + 1):
                    for b in range(pos + 1):
                        if a != pos and b != pos:
                            continue
                        ab = m1[a, b]
                        if ab <= pos and phi[ab] != m2[phi[a], phi[b]]:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    for a in range(pos):
                        for b in range(pos):
                            if m1[a, b] == pos and phi[pos] != m2[phi[a], phi[b]]:
                                ok = False
                                break
                        if not ok:
                            break
                if ok:
                    used[c] = True
                    nxt[pos] = c + 1
                    placed = True
                    break
                phi[pos] = -1
            c += 1
        if placed:
            pos += 1
            nxt[pos] = 0
        else:
            nxt[pos] = 0
            pos -= 1
            if pos >= 0:
                used[phi[pos]] = False
                phi[pos] = -1
    return phi


def _iso_py(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    n = m1.shape[0]
    phi = [-1] * n
    used = [False] * n

    def consistent(pos: int) -> bool:
        for a in range(pos + 1):
            for b in range(pos + 1):
                if a != pos and b != pos and m1[a, b] != pos:
                    continue
                ab = m1[a, b]
                if ab <= pos and phi[ab] != m2[phi[a], phi[b]]:
                    return False
        return True

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        for c in range(n):
            if used[c]:
                continue
            phi[pos] = c
            if consistent(pos):
                used[c] = True
                if extend(pos + 1):
                    return True
                used[c] = False
            phi[pos] = -1
        return False

    extend(0)
    return np.array(phi, dtype=np.int64)


def iso_search(m1: np.ndarray, m2: np.ndarray) -> np.ndarray | None:
    """A bijection ``phi`` with ``phi[m1[a,b]] == m2[phi[a],phi[b]]``, or ``None``."""
    m1 = np.ascontiguousarray(m1, dtype=np.int64)
    m2 = np.ascontiguousarray(m2, dtype=np.int64)
    if m1.shape != m2.shape:
        return None
    if m1.shape[0] == 0:
        return np.zeros(0, np.int64)
    phi = _iso_nb(m1, m2) if _backend == "numba" else _iso_py(m1, m2)
    if phi[0] < 0:
        return None
    return phi
