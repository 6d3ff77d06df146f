"""Canned finite groups of order <= 8 and the derived test corpus."""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from .setcore import GroupTable, HeapTable, group_to_heap


def cyclic(n: int) -> GroupTable:
    r = np.arange(n)
    return GroupTable(n, (r[:, None] + r[None, :]) % n, 0, (-r) % n, f"C{n}")


def direct_product(g: GroupTable, h: GroupTable, name: str = "") -> GroupTable:
    """Elements (a, b) are numbered a * |h| + b."""
    n, m = g.size, h.size
    mul = np.empty((n * m, n * m), dtype=np.int64)
    for (a, b), (c, d) in itertools.product(itertools.product(range(n), range(m)), repeat=2):
        mul[a * m + b, c * m + d] = g.mul[a, c] * m + h.mul[b, d]
    inv = [g.inv[a] * m + h.inv[b] for a in range(n) for b in range(m)]
    return GroupTable(n * m, mul, g.unit * m + h.unit, inv, name or f"{g.name}x{h.name}")


def _from_elements(elems: list, op, name: str) -> GroupTable:
    index = {e: i for i, e in enumerate(elems)}
    mul = [[index[op(a, b)] for b in elems] for a in elems]
    return GroupTable.from_mul(mul, name)


def dihedral(k: int) -> GroupTable:
    """Symmetries of a k-gon, order 2k; the pair (s, r) stands for rot^r flip^s."""
    elems = [(s, r) for s in range(2) for r in range(k)]

    def op(x, y):
        s1, r1 = x
        s2, r2 = y
        # (r^r1 f^s1)(r^r2 f^s2) = r^(r1 + (-1)^s1 r2) f^(s1+s2)
        return ((s1 + s2) % 2, (r1 + (r2 if s1 == 0 else -r2)) % k)

    return _from_elements(elems, op, f"D{k}")


def symmetric3() -> GroupTable:
    elems = sorted(itertools.permutations(range(3)))
    return _from_elements(elems, lambda p, q: tuple(p[q[i]] for i in range(3)), "S3")


def quaternion() -> GroupTable:
    # unit quaternions +-1, +-i, +-j, +-k as (sign, axis) with axis 0 = real
    elems = [(s, a) for a in range(4) for s in (1, -1)]
    table = {
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }

    def op(x, y):
        (s, a), (t, b) = x, y
        if a == 0:
            return (s * t, b)
        if b == 0:
            return (s * t, a)
        u, c = table[(a, b)]
        return (s * t * u, c)

    return _from_elements(elems, op, "Q8")


def groups_up_to(max_size: int = 8) -> list[GroupTable]:
    """Every group of order <= max_size up to isomorphism (max_size <= 8)."""
    if max_size > 8:
        raise ValueError("the canned list stops at order 8")
    c2 = cyclic(2)
    out = []
    for n in range(1, max_size + 1):
        out.append(cyclic(n))
        if n == 4:
            out.append(direct_product(c2, c2, "V4"))
        elif n == 6:
            out.append(symmetric3())
        elif n == 8:
            out.append(direct_product(c2, cyclic(4), "C2xC4"))
            out.append(direct_product(direct_product(c2, c2), c2, "C2^3"))
            out.append(dihedral(4))
            out.append(quaternion())
    return out


def group_by_name(name: str) -> GroupTable:
    for g in groups_up_to(8):
        if g.name == name:
            return g
    raise KeyError(name)


def heaps_up_to(max_size: int = 8) -> list[tuple[str, HeapTable]]:
    return [(g.name, group_to_heap(g)) for g in groups_up_to(max_size)]


def xor_heap() -> HeapTable:
    return HeapTable.from_function(2, lambda a, b, c: a ^ b ^ c)


KINDS = ("groups", "heaps", "herds", "comodules")


def corpus_generate(kind: str, max_size: int, out_dir: str | Path) -> list[Path]:
    """Write one structure file per corpus member and return the paths in corpus order."""
    from . import coalg, io, vflock

    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for g in groups_up_to(max_size):
        if kind == "groups":
            value = g
        elif kind == "heaps":
            value = group_to_heap(g)
        elif kind == "herds":
            value = coalg.heap_algebra(group_to_heap(g))
        else:
            herd = coalg.heap_algebra(group_to_heap(g))
            for x in range(g.size):
                p = out / f"{g.name}_weight{x}.json"
                io.save_structure(vflock.weight_comodule(herd, x), p)
                paths.append(p)
            continue
        p = out / f"{g.name}.json"
        io.save_structure(value, p)
        paths.append(p)
    return paths
