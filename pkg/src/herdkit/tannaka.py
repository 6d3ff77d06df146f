"""Tannaka reconstruction over a finite diagram of comodules.

The coend E of the forgetful functor over a diagram is

    E = (sum over objects X of X* (x) X) / span{ f^T b (x) a - b (x) f a },

one relation per morphism f: X -> Y, covector b of Y and vector a of X.
The summand X* (x) X is indexed by pairs (i*, j) flattened as i * dim X + j.
Comultiplication, counit and the herd operation are defined summand by
summand and factored through the quotient, so any incompatibility with the
relations surfaces as FactorizationError.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coalg import Comonoid, Herd, check_comonoid, check_comonoid_morphism, check_herd
from .errors import ComoduleAxiomError, MissingObjectError, SingularError
from .linalg import (
    FactorPerm,
    RatMat,
    cokernel,
    contract,
    factor_through_surjection,
    hstack,
    identity,
    kron,
    kron_all,
    permute_cols,
    try_inverse,
    zeros,
)
from .report import CheckReport, compare_maps
from .vflock import Comodule, check_comodule, check_comodule_morphism, duals, q_comodule


@dataclass(frozen=True, eq=False)
class Diagram:
    objects: tuple[Comodule, ...]
    morphisms: tuple[tuple[int, int, RatMat], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple((int(s), int(t), f) for s, t, f in self.morphisms))
        if not self.objects:
            raise ValueError("a diagram needs at least one object")
        k = len(self.objects)
        for s, t, f in self.morphisms:
            if not (0 <= s < k and 0 <= t < k):
                raise ValueError(f"morphism endpoints {s} -> {t} out of range")
            if f.shape != (self.objects[t].dim, self.objects[s].dim):
                raise ValueError(f"morphism {s} -> {t} has shape {f.shape}")

    @property
    def herd(self) -> Herd:
        return self.objects[0].over


def check_diagram(D: Diagram) -> CheckReport:
    rep = CheckReport()
    for i, X in enumerate(D.objects):
        rep.merge(check_comodule(X), prefix=f"object {i}: ")
    for k, (s, t, f) in enumerate(D.morphisms):
        rep.add(check_comodule_morphism(f, D.objects[s], D.objects[t], f"morphism {k} ({s} -> {t}) comodule map"))
    return rep


def simple_diagram(A: Herd, weights: Sequence[int]) -> Diagram:
    from .vflock import weight_comodule

    return Diagram(tuple(weight_comodule(A, g) for g in weights))


@dataclass
class Coend:
    diagram: Diagram
    dim: int
    proj: RatMat
    offsets: tuple[int, ...]
    deltaE: RatMat | None = None
    epsE: RatMat | None = None
    qE: RatMat | None = None
    report: CheckReport = field(default_factory=CheckReport)

    def copr(self, i: int) -> RatMat:
        """Coprojection X_i* (x) X_i -> E."""
        return self.proj.cols_at(range(self.offsets[i], self.offsets[i + 1]))

    @property
    def comonoid(self) -> Comonoid:
        return Comonoid(self.deltaE, self.epsE)

    @property
    def herd(self) -> Herd:
        if self.qE is None:
            raise ValueError("the herd operation is not built yet")
        return Herd(self.deltaE, self.epsE, self.qE)

    def to_json(self) -> dict:
        out = {"dim": self.dim, "proj": self.proj.to_json(), "offsets": list(self.offsets)}
        for key in ("deltaE", "epsE", "qE"):
            m = getattr(self, key)
            if m is not None:
                out[key] = m.to_json()
        return out


def relation_matrix(D: Diagram) -> RatMat:
    sizes = [X.dim**2 for X in D.objects]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    total = int(offsets[-1])
    cols = []
    for s, t, f in D.morphisms:
        ms, mt = D.objects[s].dim, D.objects[t].dim
        # columns indexed by (b, j): b a covector of the target, j a vector of the source
        block = np.zeros((total, mt * ms), dtype=object)
        block[offsets[s] : offsets[s + 1]] += _num(kron(f.T, identity(ms)), f.den)
        block[offsets[t] : offsets[t + 1]] -= _num(kron(identity(mt), f), f.den)
        cols.append(RatMat(block, f.den))
    if not cols:
        return zeros(total, 0)
    return hstack(cols)


def _num(m: RatMat, den: int) -> np.ndarray:
    # numerators of m over the common denominator den
    return m.num.astype(object) * (den // m.den)


def coend(D: Diagram, validate: bool = True) -> Coend:
    if validate:
        rep = check_diagram(D)
        if not rep.passed:
            bad = rep.failed()[0]
            raise ComoduleAxiomError(f"invalid diagram: {bad.name} fails at {bad.witness}")
    proj, d = cokernel(relation_matrix(D))
    sizes = [X.dim**2 for X in D.objects]
    offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(sizes)]))
    return Coend(D, d, proj, offsets)


def _coev_insert(m: int) -> RatMat:
    """1 (x) coev (x) 1 : X* (x) X -> X* (x) X (x) X* (x) X."""
    return kron_all(identity(m), duals(m).coev, identity(m))


def coend_comonoid(E: Coend) -> Coend:
    """delta_E from (copr (x) copr)(1 (x) coev (x) 1) and eps_E from ev, per summand."""
    blocks_d, blocks_e = [], []
    for i, X in enumerate(E.diagram.objects):
        c = E.copr(i)
        blocks_d.append(kron(c, c) @ _coev_insert(X.dim))
        blocks_e.append(duals(X.dim).ev)
    E.deltaE = factor_through_surjection(hstack(blocks_d), E.proj)
    E.epsE = factor_through_surjection(hstack(blocks_e), E.proj)
    E.report.merge(check_comonoid(E.comonoid), prefix="E comonoid: ")
    return E


def find_object(D: Diagram, M: Comodule) -> int:
    """Index of an object of D whose coaction equals that of M exactly."""
    for i, X in enumerate(D.objects):
        if X.dim == M.dim and X.rho == M.rho:
            return i
    raise MissingObjectError(f"no object of the diagram carries the coaction of {M.label or 'Q(X,Y,Z)'}")


def coend_herd(E: Coend, A: Herd) -> Coend:
    """q_E: on eX (x) eY (x) eZ it is copr_{Q(X,Y,Z)} after the rearrangement c_145236.

    Q(X,Y,Z) must occur in the diagram with exactly the coaction given by
    vflock.q_comodule; otherwise MissingObjectError is raised.
    """
    if E.deltaE is None:
        coend_comonoid(E)
    objs = E.diagram.objects
    N, d = E.proj.cols, E.dim
    T = np.zeros((d, N, N, N), dtype=object)
    den = 1
    blocks = []
    for x, X in enumerate(objs):
        for y, Y in enumerate(objs):
            for z, Z in enumerate(objs):
                W = q_comodule(A, X, Y, Z, validate=False)
                w = find_object(E.diagram, W)
                p = FactorPerm((X.dim, X.dim, Y.dim, Y.dim, Z.dim, Z.dim), (1, 4, 5, 2, 3, 6))
                blocks.append(((x, y, z), permute_cols(E.copr(w), p)))
                den = den * blocks[-1][1].den // np.gcd(den, blocks[-1][1].den)
    off = E.offsets
    for (x, y, z), blk in blocks:
        shape = (d, objs[x].dim ** 2, objs[y].dim ** 2, objs[z].dim ** 2)
        T[:, off[x] : off[x + 1], off[y] : off[y + 1], off[z] : off[z + 1]] = (
            blk.num.astype(object) * (den // blk.den)
        ).reshape(shape)
    target = RatMat(T.reshape(d, N**3), den)
    E.qE = factor_through_surjection(target, kron_all(E.proj, E.proj, E.proj))
    E.report.merge(check_herd(E.herd), prefix="E herd: ")
    return E


def coefficient_map(E: Coend) -> RatMat:
    """E -> A induced by b (x) m -> (b (x) 1) rho(m) on every summand."""
    n = E.diagram.herd.dim
    blocks = []
    for X in E.diagram.objects:
        m = X.dim
        # block[a, (b, j)] = rho[(b, a), j]
        blocks.append(RatMat(X.rho.num.reshape(m, n, m).transpose(1, 0, 2).reshape(n, m * m).copy(), X.rho.den))
    return factor_through_surjection(hstack(blocks), E.proj)


def herd_iso_check(E: Coend, A: Herd, f: RatMat) -> CheckReport:
    """f: E -> A invertible, a comonoid morphism, and f q_E = q_A (f (x) f (x) f)."""
    rep = CheckReport()
    if f.shape != (A.dim, E.dim):
        rep.record("shape", False, {"shape": list(f.shape), "expected": [A.dim, E.dim]})
        return rep
    try:
        try_inverse(f)
        rep.record("f invertible", True)
    except (SingularError, ValueError):
        rep.record("f invertible", False, {"shape": list(f.shape)})
    rep.merge(check_comonoid_morphism(f, E.comonoid, A.comonoid), prefix="f ")
    k = E.dim
    rhs = contract("yabc,ai,bj,ck->yijk", [(A.q, (A.dim,) * 4), (f, f.shape), (f, f.shape), (f, f.shape)], rows=A.dim)
    rep.add(compare_maps("f q_E = q_A (f(x)f(x)f)", f @ E.qE, rhs, [k, k, k], [A.dim]))
    return rep


def reconstruct_herd(D: Diagram, A: Herd | None = None) -> Coend:
    """coend, comonoid structure and herd operation in one call."""
    A = A if A is not None else D.herd
    E = coend(D)
    coend_comonoid(E)
    coend_herd(E, A)
    return E
