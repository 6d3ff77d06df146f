"""Heaps, groups and torsors in finite sets.

A heap is a set with a ternary operation q satisfying

    q(q(a,b,c),d,e) = q(a,b,q(c,d,e)),   q(a,b,b) = a,   q(a,a,b) = b.

Every group is a heap under q(x,y,z) = x y^-1 z, and every nonempty heap
arises this way from the group of classes [a,b] of pairs modulo
(q(a,b,c), c) ~ (a,b), which acts simply transitively on it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import kernels
from .errors import GroupAxiomError, HeapAxiomError, WellDefinednessError
from .report import CheckReport, compare_tables, unravel


def _table(values, shape: tuple[int, ...], n: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.int64).reshape(shape)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = int(np.flatnonzero((arr < 0) | (arr >= n))[0])
        raise ValueError(f"{what} entry {unravel(bad, shape)} = {int(arr.ravel()[bad])} is outside 0..{n - 1}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class HeapTable:
    size: int
    q: np.ndarray

    def __post_init__(self):
        n = int(self.size)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "q", _table(self.q, (n, n, n), n, "q"))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int, int], int]) -> "HeapTable":
        return cls(n, [[[f(a, b, c) for c in range(n)] for b in range(n)] for a in range(n)])

    def __call__(self, a: int, b: int, c: int) -> int:
        return int(self.q[a, b, c])

    def __eq__(self, other) -> bool:
        return isinstance(other, HeapTable) and self.size == other.size and np.array_equal(self.q, other.q)


@dataclass(frozen=True, eq=False)
class GroupTable:
    size: int
    mul: np.ndarray
    unit: int
    inv: np.ndarray
    name: str = ""

    def __post_init__(self):
        n = int(self.size)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "mul", _table(self.mul, (n, n), n, "mul"))
        object.__setattr__(self, "inv", _table(self.inv, (n,), n, "inv"))
        if not 0 <= int(self.unit) < max(n, 1) or n == 0:
            raise ValueError(f"unit {self.unit} is outside 0..{n - 1}")
        object.__setattr__(self, "unit", int(self.unit))

    @classmethod
    def from_mul(cls, mul, name: str = "") -> "GroupTable":
        """Build from a Cayley table alone; unit and inverses are searched for."""
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        r = np.arange(n)
        units = [e for e in range(n) if np.array_equal(mul[e], r) and np.array_equal(mul[:, e], r)]
        if not units:
            raise GroupAxiomError("no two-sided unit")
        e = units[0]
        inv = []
        for a in range(n):
            hits = np.flatnonzero((mul[a] == e) & (mul[:, a] == e))
            if hits.size == 0:
                raise GroupAxiomError(f"element {a} has no inverse")
            inv.append(int(hits[0]))
        return cls(n, mul, e, inv, name)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupTable)
            and self.size == other.size
            and self.unit == other.unit
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.inv, other.inv)
        )


@dataclass(frozen=True, eq=False)
class ActionTable:
    """Left action of ``group`` on {0..size-1}; ``act[g, a] = g.a``."""

    group: GroupTable
    size: int
    act: np.ndarray

    def __post_init__(self):
        n = int(self.size)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "act", _table(self.act, (self.group.size, n), n, "act"))


@dataclass(frozen=True)
class HeapQuotient:
    """Result of heap_to_group; unpacks as ``(group, varpi)``.

    ``regular_epi`` is False only for the empty heap, where A -> 1 is not an
    epimorphism and the group is the trivial one by convention.
    """

    group: GroupTable
    varpi: np.ndarray
    regular_epi: bool = True

    def __iter__(self) -> Iterator:
        yield self.group
        yield self.varpi


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

PARA = "para-associativity q(q(a,b,c),d,e) = q(a,b,q(c,d,e))"
RIGHT = "q(a,b,b) = a"
LEFT = "q(a,a,b) = b"


def check_heap(h: HeapTable) -> CheckReport:
    """The three heap laws, each with the first failing tuple in lexicographic order."""
    n, q = h.size, h.q
    scan = kernels.heap_scan(q)
    rep = CheckReport()
    if scan[0] < 0:
        rep.record(PARA, True)
    else:
        a, b, c, d, e = unravel(scan[0], (n,) * 5)
        rep.record(PARA, False, {"tuple": [a, b, c, d, e], "lhs": int(q[q[a, b, c], d, e]), "rhs": int(q[a, b, q[c, d, e]])})
    if scan[1] < 0:
        rep.record(RIGHT, True)
    else:
        a, b = unravel(scan[1], (n, n))
        rep.record(RIGHT, False, {"tuple": [a, b], "lhs": int(q[a, b, b]), "rhs": a})
    if scan[2] < 0:
        rep.record(LEFT, True)
    else:
        a, b = unravel(scan[2], (n, n))
        rep.record(LEFT, False, {"tuple": [a, b], "lhs": int(q[a, a, b]), "rhs": b})
    return rep


def check_group(g: GroupTable) -> CheckReport:
    n, m = g.size, g.mul
    r = np.arange(n)
    rep = CheckReport()
    rep.add(compare_tables("associativity", m[m[:, :, None], r[None, None, :]], m[r[:, None, None], m[None, :, :]]))
    rep.add(compare_tables("left unit", m[g.unit, :], r))
    rep.add(compare_tables("right unit", m[:, g.unit], r))
    rep.add(compare_tables("left inverse", m[g.inv, r], np.full(n, g.unit)))
    rep.add(compare_tables("right inverse", m[r, g.inv], np.full(n, g.unit)))
    return rep


def _require_heap(h: HeapTable) -> None:
    rep = check_heap(h)
    if not rep.passed:
        bad = rep.failed()[0]
        raise HeapAxiomError(f"not a heap: {bad.name} fails at {bad.witness['tuple']}")


def _require_group(g: GroupTable) -> None:
    rep = check_group(g)
    if not rep.passed:
        bad = rep.failed()[0]
        raise GroupAxiomError(f"not a group: {bad.name} fails at {bad.witness['tuple']}")


# ---------------------------------------------------------------------------
# heap <-> group
# ---------------------------------------------------------------------------

def group_to_heap(g: GroupTable) -> HeapTable:
    _require_group(g)
    m = g.mul
    # q(x,y,z) = (x y^-1) z
    left = m[:, g.inv]
    return HeapTable(g.size, m[left[:, :, None], np.arange(g.size)[None, None, :]])


def _pair_classes(h: HeapTable) -> np.ndarray:
    """Union-find over the relation (q(a,b,c), c) ~ (a,b); returns a root per pair a*n+b."""
    n, q = h.size, h.q
    parent = list(range(n * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(n):
            for c in range(n):
                x, y = find(int(q[a, b, c]) * n + c), find(a * n + b)
                if x != y:
                    parent[max(x, y)] = min(x, y)
    return np.array([find(i) for i in range(n * n)], dtype=np.int64)


def heap_to_group(h: HeapTable) -> HeapQuotient:
    """The group of pair classes of a heap and the division map varpi(a,b) = [a,b].

    Classes are labelled by elements of the heap: [a,b] gets the label x of
    the unique pair (x, 0) in its class, so varpi(a, 0) = a and the unit is
    the label of [a,a].
    """
    _require_heap(h)
    n, q = h.size, h.q
    if n == 0:
        warnings.warn("empty heap: A -> 1 is not an epimorphism; returning the trivial group", stacklevel=2)
        trivial = GroupTable(1, [[0]], 0, [0], "C1")
        return HeapQuotient(trivial, np.zeros((0, 0), dtype=np.int64), regular_epi=False)

    roots = _pair_classes(h).reshape(n, n)
    label_of_root = {}
    for x in range(n):
        root = int(roots[x, 0])
        if root in label_of_root:
            raise WellDefinednessError(f"pairs ({label_of_root[root]},0) and ({x},0) are identified")
        label_of_root[root] = x
    if len(set(roots.ravel().tolist())) != n:
        raise WellDefinednessError("number of pair classes differs from the heap size")
    varpi = np.vectorize(lambda r: label_of_root[int(r)], otypes=[np.int64])(roots)

    # [a,b][c,d] = [q(a,b,c), d], checked on every choice of representatives
    mul = np.array([[varpi[q[x, 0, y], 0] for y in range(n)] for x in range(n)], dtype=np.int64)
    r = np.arange(n)
    a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij")
    induced = varpi[q[a, b, c], d]
    if not np.array_equal(induced, mul[varpi[a, b], varpi[c, d]]):
        raise WellDefinednessError("product of pair classes depends on representatives")
    units = set(varpi[r, r].tolist())
    if len(units) != 1:
        raise WellDefinednessError("the classes [a,a] do not coincide")
    inv = np.empty(n, dtype=np.int64)
    inv[varpi[r[:, None], r[None, :]]] = varpi.T
    if not np.array_equal(inv[varpi], varpi.T):
        raise WellDefinednessError("inverse [a,b] -> [b,a] depends on representatives")
    g = GroupTable(n, mul, units.pop(), inv)
    _require_group(g)
    return HeapQuotient(g, varpi)


def action_from_heap(h: HeapTable) -> ActionTable:
    """The induced action [a,b].c = q(a,b,c) of the pair-class group."""
    g, varpi = heap_to_group(h)
    n, q = h.size, h.q
    act = np.full((g.size, n), -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            k = varpi[a, b]
            for c in range(n):
                v = q[a, b, c]
                if act[k, c] >= 0 and act[k, c] != v:
                    raise WellDefinednessError(f"[{a},{b}].{c} depends on the representative")
                act[k, c] = v
    if n == 0:
        act = np.zeros((g.size, 0), dtype=np.int64)
    return ActionTable(g, n, act)


def check_torsor(act: ActionTable) -> CheckReport:
    """Torsor conditions in finite sets.

    (i) the carrier is nonempty, (ii) (g, a) -> (g.a, a) is a bijection
    G x A -> A x A. When (ii) holds the division table varpi is emitted as
    ``artifacts["division"]`` together with its two defining identities.
    """
    g, n, t = act.group, act.size, act.act
    rep = CheckReport()
    r = np.arange(n)
    rep.record("carrier nonempty", n > 0, {"size": n})
    rep.add(compare_tables("unit acts trivially", t[g.unit], r))
    gg = np.arange(g.size)
    rep.add(compare_tables("action compatible with product", t[g.mul[:, :, None], r], t[gg[:, None, None], t[None, :, :]]))

    image = t * n + r[None, :]  # (g.a, a) flattened
    seen: dict[int, tuple[int, int]] = {}
    clash = None
    for k in range(g.size):
        for a in range(n):
            key = int(image[k, a])
            if key in seen and clash is None:
                clash = {"pairs": [list(seen[key]), [k, a]], "image": [key // n, key % n]}
            seen.setdefault(key, (k, a))
    bijective = clash is None and len(seen) == n * n and g.size * n == n * n
    if bijective:
        rep.record("(g,a) -> (g.a,a) bijective", True)
    elif clash is not None:
        rep.record("(g,a) -> (g.a,a) bijective", False, clash)
    else:
        missing = next(i for i in range(n * n) if i not in seen) if len(seen) < n * n else None
        rep.record("(g,a) -> (g.a,a) bijective", False, {"missed": None if missing is None else [missing // n, missing % n]})

    if bijective and n > 0:
        varpi = np.empty((n, n), dtype=np.int64)
        for k in range(g.size):
            varpi[t[k], r] = k
        rep.add(compare_tables("varpi(g.a, a) = g", varpi[t, r[None, :]], np.broadcast_to(gg[:, None], (g.size, n))))
        rep.add(compare_tables("varpi(a,b).b = a", t[varpi, r[None, :]], np.broadcast_to(r[:, None], (n, n))))
        rep.artifacts["division"] = varpi.tolist()
    return rep


def group_isomorphism(g1: GroupTable, g2: GroupTable) -> np.ndarray | None:
    """Brute-force backtracking search for phi with phi(xy) = phi(x)phi(y)."""
    if g1.size != g2.size:
        return None
    return kernels.iso_search(g1.mul, g2.mul)


def regular_action(g: GroupTable) -> ActionTable:
    return ActionTable(g, g.size, g.mul)
