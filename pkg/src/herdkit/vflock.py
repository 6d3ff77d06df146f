"""Right comodules over a herd and the flock structure Q(L, M, N) = L (x) M* (x) N.

Duality conventions, fixed once for all: coev_M: I -> M (x) M* and
ev_M: M* (x) M -> I, both the identity pattern in the standard and dual
bases. Q acts on maps by Q(f, g, h) = f (x) g^T (x) h.

The coaction on Q(L, M, N) is the composite

    L M* N --1 1 coev 1--> L M* M M* N --rho 1 rho 1 rho--> L A M* M A M* N A
           --1 1 ev 1 1 1 1--> L A A M* N A --c_145236--> L M* N A A A --1 1 1 q--> L M* N A

q_coaction contracts this composite in one step; ``literal=True`` multiplies
out the stages instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coalg import Herd
from .errors import ComoduleAxiomError, SingularError
from .linalg import (
    FactorPerm,
    RatMat,
    contract,
    identity,
    kron,
    kron_all,
    left_apply,
    permute_rows,
    try_inverse,
)
from .report import Check, CheckReport, compare_maps

# Largest coaction matrix (entries) the pentagon check will build.
DENSE_BUDGET = 1 << 25


@dataclass(frozen=True, eq=False)
class Comodule:
    """Right A-comodule: rho is the (dim * n) x dim matrix of M -> M (x) A."""

    dim: int
    over: Herd
    rho: RatMat
    label: str = ""

    def __post_init__(self):
        n = self.over.dim
        if self.rho.shape != (self.dim * n, self.dim):
            raise ValueError(f"rho has shape {self.rho.shape}, expected {(self.dim * n, self.dim)}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Comodule) and self.dim == other.dim and self.rho == other.rho and self.over == other.over

    __hash__ = None


@dataclass(frozen=True)
class DualData:
    ev: RatMat
    coev: RatMat


def duals(m: int) -> DualData:
    eye = np.eye(m, dtype=np.int64).reshape(m * m, 1)
    return DualData(RatMat(eye.T.copy()), RatMat(eye))


def check_duals(m: int) -> CheckReport:
    d = duals(m)
    rep = CheckReport()
    # (ev (x) 1_{M*})(1_{M*} (x) coev) = 1 and (1_M (x) ev)(coev (x) 1_M) = 1
    rep.add(compare_maps("snake on M*", left_apply(d.ev, kron(identity(m), d.coev), 1, m), identity(m), [m], [m]))
    rep.add(compare_maps("snake on M", left_apply(d.ev, kron(d.coev, identity(m)), m, 1), identity(m), [m], [m]))
    return rep


# ---------------------------------------------------------------------------
# comodules
# ---------------------------------------------------------------------------


def check_comodule(M: Comodule) -> CheckReport:
    m, n, rho = M.dim, M.over.dim, M.rho
    A = M.over
    rep = CheckReport()
    rep.add(compare_maps("coassociativity", left_apply(rho, rho, 1, n), left_apply(A.delta, rho, m, 1), [m], [m, n, n]))
    rep.add(compare_maps("counit", left_apply(A.eps, rho, m, 1), identity(m), [m], [m]))
    return rep


def check_comodule_morphism(f: RatMat, M: Comodule, N: Comodule, name: str = "comodule morphism") -> Check:
    """rho_N f = (f (x) 1_A) rho_M."""
    n = M.over.dim
    if f.shape != (N.dim, M.dim):
        return Check(name, False, {"shape": list(f.shape), "expected": [N.dim, M.dim]})
    return compare_maps(name, N.rho @ f, left_apply(f, M.rho, 1, n), [M.dim], [N.dim, n])


def regular_comodule(A: Herd) -> Comodule:
    return Comodule(A.dim, A, A.delta, "A")


def weight_comodule(A: Herd, g: int) -> Comodule:
    """Q_g: the 1-dimensional comodule with rho(1) = 1 (x) e_g, for a group-like e_g."""
    rho = np.zeros((A.dim, 1), dtype=np.int64)
    rho[g, 0] = 1
    return Comodule(1, A, RatMat(rho), f"Q_{g}")


def trivial_comodule(A: Herd, m: int) -> Comodule:
    """Q^m with rho = 1 (x) u for the unique group-like of a one-dimensional herd."""
    if A.dim != 1:
        raise ValueError("plain vector spaces are comodules only over the one-dimensional herd")
    return Comodule(m, A, identity(m), f"V{m}")


def _require(M: Comodule) -> None:
    rep = check_comodule(M)
    if not rep.passed:
        bad = rep.failed()[0]
        raise ComoduleAxiomError(f"comodule {M.label or M.dim}: {bad.name} fails at {bad.witness['basis']}")


def _same_herd(*objs: Comodule) -> Herd:
    A = objs[0].over
    for M in objs[1:]:
        if M.over is not A and M.over != A:
            raise ComoduleAxiomError("comodules over different herds")
    return A


def q_coaction(A: Herd, L: Comodule, M: Comodule, N: Comodule, literal: bool = False) -> RatMat:
    """The coaction on L (x) M* (x) N.

    ``literal=True`` multiplies out the six-stage composite; its widest stage
    has dim(L M* M M* N) * n^3 rows, which is out of reach for nested
    objects. The default contracts the same composite in one step, using
    that the coev/ev pair collapses to a transpose of rho_M:

        out[(i', j', k', a), (i, j, k)] = sum rho_L[(i', a1), i] rho_M[(j, a2), j']
                                            rho_N[(k', a3), k] q[a; a1, a2, a3]
    """
    l, m, k, n = L.dim, M.dim, N.dim, A.dim
    if not literal:
        return contract(
            "xpi,jqy,zrk,apqr->xyzaijk",
            [(L.rho, (l, n, l)), (M.rho, (m, n, m)), (N.rho, (k, n, k)), (A.q, (n, n, n, n))],
            rows=l * m * k * n,
        )
    dd = duals(m)
    x = kron_all(identity(l * m), dd.coev, identity(k))  # L M* M M* N
    x = left_apply(L.rho, x, 1, m * m * m * k)  # L A M* M M* N
    x = left_apply(M.rho, x, l * n * m, m * k)  # L A M* M A M* N
    x = left_apply(N.rho, x, l * n * m * m * n * m, 1)  # L A M* M A M* N A
    x = left_apply(dd.ev, x, l * n, n * m * k * n)  # L A A M* N A
    x = permute_rows(FactorPerm((l, n, n, m, k, n), (1, 4, 5, 2, 3, 6)), x)  # L M* N A A A
    return left_apply(A.q, x, l * m * k, 1)


def q_comodule(A: Herd, L: Comodule, M: Comodule, N: Comodule, validate: bool = True) -> Comodule:
    if validate:
        for X in (L, M, N):
            _require(X)
    _same_herd(L, M, N)
    label = f"Q({L.label},{M.label},{N.label})" if L.label and M.label and N.label else ""
    return Comodule(L.dim * M.dim * N.dim, A, q_coaction(A, L, M, N), label)


def q_on_maps(f: RatMat, g: RatMat, h: RatMat) -> RatMat:
    """Q(f, g, h) = f (x) g^T (x) h, contravariant in the middle."""
    return kron_all(f, g.T, h)


def alpha(L: Comodule, M: Comodule) -> RatMat:
    """alpha = 1_L (x) ev_M : Q(L, M, M) -> L."""
    return kron(identity(L.dim), duals(M.dim).ev)


def beta(L: Comodule, M: Comodule) -> RatMat:
    """beta = coev_L (x) 1_M : M -> Q(L, L, M)."""
    return kron(duals(L.dim).coev, identity(M.dim))


# ---------------------------------------------------------------------------
# flock maps and conditions
# ---------------------------------------------------------------------------


@dataclass
class FlockData:
    objects: tuple[Comodule, ...]
    phi: RatMat
    alpha: RatMat
    beta: RatMat
    report: CheckReport = field(default_factory=CheckReport)


def flock_maps(A: Herd, L: Comodule, M: Comodule, N: Comodule, R: Comodule, S: Comodule) -> FlockData:
    """phi, alpha, beta for the supplied objects, checked as comodule maps, plus the three flock conditions.

    phi is the identity on L M* N R* S; its content is that the coactions of
    Q(Q(L,M,N),R,S) and Q(L,M,Q(N,R,S)) coincide. The pentagon is checked on
    Q(Q(Q(L,M,N),R,S),L,M), the triangle on Q(L,M,N), and alpha beta = 1 on
    every supplied object.
    """
    objs = (L, M, N, R, S)
    _same_herd(*objs)
    rep = CheckReport()
    for X, name in zip(objs, "LMNRS"):
        rep.merge(check_comodule(X), prefix=f"{name}: ")
    Q = lambda x, y, z: q_comodule(A, x, y, z, validate=False)  # noqa: E731

    lmn = Q(L, M, N)
    rep.merge(check_comodule(lmn), prefix="Q(L,M,N): ")
    left, right = Q(lmn, R, S), Q(L, M, Q(N, R, S))
    rep.merge(check_comodule(left), prefix="Q(Q(L,M,N),R,S): ")
    phi = identity(left.dim)
    rep.add(check_comodule_morphism(phi, left, right, "phi comodule morphism"))

    lmm = Q(L, M, M)
    a = alpha(L, M)
    rep.add(check_comodule_morphism(a, lmm, L, "alpha comodule morphism"))
    llm = Q(L, L, M)
    b = beta(L, M)
    rep.add(check_comodule_morphism(b, M, llm, "beta comodule morphism"))

    # Q(1,1,beta): Q(L,M,N) -> Q(L,M,Q(M,M,N)) and Q(alpha,1,1): Q(Q(L,M,M),M,N) -> Q(L,M,N)
    lm_mmn = Q(L, M, Q(M, M, N))
    q11b = q_on_maps(identity(L.dim), identity(M.dim), beta(M, N))
    rep.add(check_comodule_morphism(q11b, lmn, lm_mmn, "Q(1,1,beta) comodule morphism"))
    lmm_mn = Q(lmm, M, N)
    qa11 = q_on_maps(a, identity(M.dim), identity(N.dim))
    rep.add(check_comodule_morphism(qa11, lmm_mn, lmn, "Q(alpha,1,1) comodule morphism"))

    rep.merge(pentagon(A, (L, M, N, R, S, L, M)))
    rep.add(triangle(L, M, N))
    for X, name in zip(objs, "LMNRS"):
        rep.add(compare_maps(f"alpha beta = 1 on {name}", alpha(X, X) @ beta(X, X), identity(X.dim), [X.dim], [X.dim]))
    return FlockData(objs, phi, a, b, rep)


def pentagon(A: Herd, objs: Sequence[Comodule]) -> CheckReport:
    """The phi-coherence condition on Q(Q(Q(a,b,c),d,e),f,g).

    Both paths are products of identity matrices on the common carrier; the
    check is that each arrow is a comodule map between the bracketings it
    connects, and that the two composites agree.
    """
    a, b, c, d, e, f, g = objs
    size = math.prod(x.dim for x in objs)
    if size * size * A.dim > DENSE_BUDGET:
        raise ValueError(f"pentagon carrier of dimension {size} is too large for dense verification")
    Q = lambda x, y, z: q_comodule(A, x, y, z, validate=False)  # noqa: E731
    abc, cde, efg = Q(a, b, c), Q(c, d, e), Q(e, f, g)
    nodes = {
        "Q(Q(Q(A,B,C),D,E),F,G)": Q(Q(abc, d, e), f, g),
        "Q(Q(A,B,C),D,Q(E,F,G))": Q(abc, d, efg),
        "Q(A,B,Q(C,D,Q(E,F,G)))": Q(a, b, Q(c, d, efg)),
        "Q(Q(A,B,Q(C,D,E)),F,G)": Q(Q(a, b, cde), f, g),
        "Q(A,B,Q(Q(C,D,E),F,G))": Q(a, b, Q(cde, f, g)),
    }
    names = list(nodes)
    one = identity(size)
    # phi, and Q(phi,1,1) / Q(1,1,phi) via q_on_maps of identity phis
    phi_abc = identity(abc.dim * d.dim * e.dim)
    phi_cde = identity(cde.dim * f.dim * g.dim)
    arrows = [
        ("phi", names[0], names[1], one),
        ("phi", names[1], names[2], one),
        ("Q(phi,1,1)", names[0], names[3], q_on_maps(phi_abc, identity(f.dim), identity(g.dim))),
        ("phi", names[3], names[4], one),
        ("Q(1,1,phi)", names[4], names[2], q_on_maps(identity(a.dim), identity(b.dim), phi_cde)),
    ]
    rep = CheckReport()
    for label, src, dst, mat in arrows:
        rep.add(check_comodule_morphism(mat, nodes[src], nodes[dst], f"pentagon: {label} {src} -> {dst}"))
    top = one @ one
    bottom = arrows[4][3] @ one @ arrows[2][3]
    rep.add(compare_maps("pentagon commutes", top, bottom, None, None))
    return rep


def triangle(L: Comodule, M: Comodule, N: Comodule) -> Check:
    """Q(alpha,1,1) phi^-1 Q(1,1,beta) = 1 on Q(L,M,N)."""
    l, m, k = L.dim, M.dim, N.dim
    up = q_on_maps(identity(l), identity(m), beta(M, N))
    phi_inv = identity(up.rows)
    down = q_on_maps(alpha(L, M), identity(m), identity(k))
    return compare_maps("triangle", down @ phi_inv @ up, identity(l * m * k), [l, m, k], [l, m, k])


# ---------------------------------------------------------------------------
# unit objects
# ---------------------------------------------------------------------------


def _weight(M: Comodule) -> int | None:
    """The index g with rho = 1 (x) e_g, if M is a 1-dimensional group-like comodule."""
    if M.dim != 1:
        return None
    col = M.rho.column(0)
    hits = [i for i, x in enumerate(col) if x != 0]
    return hits[0] if len(hits) == 1 and col[hits[0]] == 1 else None


def unit_object_check(A: Herd, J: Comodule, objs: Sequence[Comodule]) -> CheckReport:
    """Invertibility of alpha: Q(X,J,J) -> X and beta: Y -> Q(J,J,Y) for all objects.

    When every map is invertible the report's artifacts hold the induced
    tensor products X (x) Y = Q(X,J,Y) and duals X* = Q(J,X,J), with the
    duality counit alpha: Q(J,X,X) -> J and unit beta: J -> Q(X,X,J).
    """
    rep = CheckReport()
    Q = lambda x, y, z: q_comodule(A, x, y, z, validate=False)  # noqa: E731
    rep.merge(check_comodule(J), prefix="J: ")
    ok = True
    for i, X in enumerate(objs):
        name = X.label or f"#{i}"
        a, b = alpha(X, J), beta(J, X)
        for tag, mat, src, dst in (("alpha", a, Q(X, J, J), X), ("beta", b, X, Q(J, J, X))):
            rep.add(check_comodule_morphism(mat, src, dst, f"{tag} {name} comodule morphism"))
            try:
                if mat.rows != mat.cols:
                    raise SingularError("not square")
                try_inverse(mat)
                rep.record(f"{tag} {name} invertible", True)
            except SingularError:
                ok = False
                rep.record(f"{tag} {name} invertible", False, {"shape": list(mat.shape)})
    if not ok:
        return rep
    tensors, dual_objs = {}, {}
    for i, X in enumerate(objs):
        xn = X.label or f"#{i}"
        D = Q(J, X, J)
        dual_objs[xn] = {"dim": D.dim, "rho": D.rho.to_json()}
        rep.add(check_comodule_morphism(alpha(J, X), Q(J, X, X), J, f"duality counit {xn} comodule morphism"))
        rep.add(check_comodule_morphism(beta(X, J), J, Q(X, X, J), f"duality unit {xn} comodule morphism"))
        for j, Y in enumerate(objs):
            yn = Y.label or f"#{j}"
            T = Q(X, J, Y)
            tensors[f"{xn}*{yn}"] = {"dim": T.dim, "rho": T.rho.to_json()}
    rep.artifacts["tensor"] = tensors
    rep.artifacts["dual"] = dual_objs
    wj = _weight(J)
    if wj is not None and wj != 0:
        rep.notes.append(f"J has weight {wj}: the induced tensor is X (x) Y = Q(X,J,Y), so weights combine as q(x, {wj}, y)")
    return rep
