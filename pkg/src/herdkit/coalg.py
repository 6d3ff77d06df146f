"""Comonoids, bimonoids, Hopf monoids and herds as structure-constant matrices.

Every structure lives on Q^n with basis e_0..e_{n-1}. ``delta`` is n^2 x n,
``eps`` 1 x n, ``mu`` n x n^2, ``eta`` n x 1, ``q`` n x n^3, all following
the row-major tensor convention of ``linalg``.

Tensor products of comonoids are kept factorised: the comultiplication of
A (x) A° (x) A for an 8-dimensional A would be a 262144 x 512 matrix, so
``tensor_comonoid`` remembers its factors and morphism checks contract
against them directly.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import HeapAxiomError, NoAntipodeError, SingularError, WellDefinednessError
from .linalg import (
    RatMat,
    contract,
    identity,
    kron,
    kron_all,
    left_apply,
    right_apply,
    swap,
    try_inverse,
)
from .report import CheckReport, compare_maps
from .setcore import GroupTable, HeapTable, check_heap

# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------


def _need(m: RatMat, shape: tuple[int, int], what: str) -> RatMat:
    if m.shape != shape:
        raise ValueError(f"{what} has shape {m.shape}, expected {shape}")
    return m


class Comonoid:
    """Carrier Q^dim with comultiplication and counit.

    Either ``delta`` is given, or ``parts`` lists comonoids whose tensor
    product this is; the comultiplication is then built only on request.
    """

    def __init__(self, delta: RatMat | None, eps: RatMat, parts: Sequence["Comonoid"] = ()):
        self.parts = tuple(parts)
        n = eps.cols
        self.dim = n
        self.eps = _need(eps, (1, n), "eps")
        if delta is not None:
            _need(delta, (n * n, n), "delta")
            self.__dict__["delta"] = delta
        elif not self.parts:
            raise ValueError("a comonoid needs delta or factors")

    @cached_property
    def delta(self) -> RatMat:
        out = self.parts[0].delta
        dims = [self.parts[0].dim]
        for p in self.parts[1:]:
            out = _tensor_delta(out, math.prod(dims), p.delta, p.dim)
            dims.append(p.dim)
        return out

    def leaves(self) -> tuple["Comonoid", ...]:
        return self.parts or (self,)

    def __eq__(self, other) -> bool:
        return isinstance(other, Comonoid) and self.eps == other.eps and self.delta == other.delta

    __hash__ = None

    def __repr__(self) -> str:
        return f"Comonoid(dim={self.dim}{', factors=' + str(len(self.parts)) if self.parts else ''})"


def _tensor_delta(da: RatMat, n: int, db: RatMat, m: int) -> RatMat:
    # (1 (x) c_{A,B} (x) 1)(delta_A (x) delta_B): out[a,b,a',b' ; i,j] = DA[a,a',i] DB[b,b',j]
    return contract("pri,qsj->pqrsij", [(da, (n, n, n)), (db, (m, m, m))], rows=(n * m) ** 2)


@dataclass(frozen=True, eq=False)
class Monoid:
    mu: RatMat
    eta: RatMat

    @property
    def dim(self) -> int:
        return self.eta.rows

    def __post_init__(self):
        n = self.eta.rows
        _need(self.eta, (n, 1), "eta")
        _need(self.mu, (n, n * n), "mu")


@dataclass(frozen=True, eq=False)
class Bimonoid:
    delta: RatMat
    eps: RatMat
    mu: RatMat
    eta: RatMat

    def __post_init__(self):
        n = self.eps.cols
        _need(self.delta, (n * n, n), "delta")
        _need(self.mu, (n, n * n), "mu")
        _need(self.eta, (n, 1), "eta")

    @property
    def dim(self) -> int:
        return self.eps.cols

    @property
    def comonoid(self) -> Comonoid:
        return Comonoid(self.delta, self.eps)

    @property
    def monoid(self) -> Monoid:
        return Monoid(self.mu, self.eta)

    def __eq__(self, other) -> bool:
        return isinstance(other, Bimonoid) and all(
            getattr(self, k) == getattr(other, k) for k in ("delta", "eps", "mu", "eta")
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class HopfMonoid(Bimonoid):
    nu: RatMat = None

    def __post_init__(self):
        super().__post_init__()
        if self.nu is None:
            raise ValueError("a Hopf monoid needs an antipode")
        _need(self.nu, (self.dim, self.dim), "nu")

    @property
    def bimonoid(self) -> Bimonoid:
        return Bimonoid(self.delta, self.eps, self.mu, self.eta)

    def __eq__(self, other) -> bool:
        return isinstance(other, HopfMonoid) and super().__eq__(other) and self.nu == other.nu

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Herd:
    delta: RatMat
    eps: RatMat
    q: RatMat

    def __post_init__(self):
        n = self.eps.cols
        _need(self.delta, (n * n, n), "delta")
        _need(self.q, (n, n**3), "q")

    @property
    def dim(self) -> int:
        return self.eps.cols

    @property
    def comonoid(self) -> Comonoid:
        return Comonoid(self.delta, self.eps)

    def __eq__(self, other) -> bool:
        return isinstance(other, Herd) and self.delta == other.delta and self.eps == other.eps and self.q == other.q

    __hash__ = None


# ---------------------------------------------------------------------------
# comonoids
# ---------------------------------------------------------------------------


def check_comonoid(A: Comonoid) -> CheckReport:
    n, d, e = A.dim, A.delta, A.eps
    rep = CheckReport()
    rep.add(compare_maps("coassociativity", left_apply(d, d, 1, n), left_apply(d, d, n, 1), [n], [n, n, n]))
    rep.add(compare_maps("left counit", left_apply(e, d, 1, n), identity(n), [n], [n]))
    rep.add(compare_maps("right counit", left_apply(e, d, n, 1), identity(n), [n], [n]))
    return rep


def opposite_comonoid(A: Comonoid) -> Comonoid:
    return Comonoid(swap(A.dim, A.dim) @ A.delta, A.eps)


def tensor_comonoid(*factors: Comonoid) -> Comonoid:
    """A (x) B (x) ... with delta = (1 (x) c (x) 1)(delta_A (x) delta_B), kept factorised."""
    leaves = tuple(leaf for f in factors for leaf in f.leaves())
    if len(leaves) == 1:
        return leaves[0]
    return Comonoid(None, kron_all(*(leaf.eps for leaf in leaves)), leaves)


def trivial_comonoid() -> Comonoid:
    return Comonoid(identity(1), identity(1))


def pushed_delta(f: RatMat, A: Comonoid) -> RatMat:
    """(f (x) f) . delta_A, contracted factor by factor."""
    leaves = A.leaves()
    k = len(leaves)
    pool = iter(string.ascii_letters)
    y, z = next(pool), next(pool)
    a = [next(pool) for _ in range(k)]
    b = [next(pool) for _ in range(k)]
    i = [next(pool) for _ in range(k)]
    terms = [y + "".join(a), z + "".join(b)] + [a[t] + b[t] + i[t] for t in range(k)]
    spec = ",".join(terms) + "->" + y + z + "".join(i)
    fshape = (f.rows, *(leaf.dim for leaf in leaves))
    ops = [(f, fshape), (f, fshape)] + [(leaf.delta, (leaf.dim,) * 3) for leaf in leaves]
    return contract(spec, ops, rows=f.rows * f.rows)


def check_comonoid_morphism(f: RatMat, A: Comonoid, B: Comonoid, prefix: str = "") -> CheckReport:
    """delta_B f = (f (x) f) delta_A and eps_B f = eps_A."""
    if f.shape != (B.dim, A.dim):
        raise ValueError(f"map has shape {f.shape}, expected {(B.dim, A.dim)}")
    in_dims = [leaf.dim for leaf in A.leaves()]
    rep = CheckReport()
    rep.add(compare_maps(prefix + "preserves comultiplication", B.delta @ f, pushed_delta(f, A), in_dims, [B.dim, B.dim]))
    rep.add(compare_maps(prefix + "preserves counit", B.eps @ f, A.eps, in_dims, [1]))
    return rep


# ---------------------------------------------------------------------------
# herds
# ---------------------------------------------------------------------------

HERD_AXIOMS = (
    "(a) q is a comonoid morphism A(x)A°(x)A -> A",
    "(b) q(q(x)1(x)1) = q(1(x)1(x)q)",
    "(c) q(1(x)delta) = 1(x)eps",
    "(d) q(delta(x)1) = eps(x)1",
)


def herd_source(A: Comonoid) -> Comonoid:
    return tensor_comonoid(A, opposite_comonoid(A), A)


def check_herd(hd: Herd) -> CheckReport:
    n, q, d, e = hd.dim, hd.q, hd.delta, hd.eps
    A = hd.comonoid
    rep = CheckReport()
    rep.merge(check_comonoid(A), prefix="comonoid: ")
    morph = check_comonoid_morphism(q, herd_source(A), A)
    bad = morph.failed()
    rep.record(HERD_AXIOMS[0], not bad, {"part": bad[0].name, **bad[0].witness} if bad else None)
    rep.add(compare_maps(HERD_AXIOMS[1], right_apply(q, q, 1, n * n), right_apply(q, q, n * n, 1), [n] * 5, [n]))
    rep.add(compare_maps(HERD_AXIOMS[2], right_apply(q, d, n, 1), kron(identity(n), e), [n, n], [n]))
    rep.add(compare_maps(HERD_AXIOMS[3], right_apply(q, d, 1, n), kron(e, identity(n)), [n, n], [n]))
    return rep


# ---------------------------------------------------------------------------
# bimonoids and Hopf monoids
# ---------------------------------------------------------------------------


def check_monoid(M: Monoid) -> CheckReport:
    n, mu, eta = M.dim, M.mu, M.eta
    rep = CheckReport()
    rep.add(compare_maps("associativity", right_apply(mu, mu, 1, n), right_apply(mu, mu, n, 1), [n, n, n], [n]))
    rep.add(compare_maps("left unit", right_apply(mu, eta, 1, n), identity(n), [n], [n]))
    rep.add(compare_maps("right unit", right_apply(mu, eta, n, 1), identity(n), [n], [n]))
    return rep


def mu_tensor(mu: RatMat, n: int) -> RatMat:
    """(mu (x) mu)(1 (x) c (x) 1): multiplication of H (x) H."""
    return contract("yac,zbd->yzabcd", [(mu, (n, n, n)), (mu, (n, n, n))], rows=n * n)


def check_bimonoid(B: Bimonoid) -> CheckReport:
    n, d, e, mu, eta = B.dim, B.delta, B.eps, B.mu, B.eta
    rep = CheckReport()
    rep.merge(check_comonoid(B.comonoid), prefix="comonoid: ")
    rep.merge(check_monoid(B.monoid), prefix="monoid: ")
    rhs = contract("yac,zbd,abi,cdj->yzij", [(mu, (n, n, n)), (mu, (n, n, n)), (d, (n, n, n)), (d, (n, n, n))], rows=n * n)
    rep.add(compare_maps("delta mu = (mu(x)mu)(1(x)c(x)1)(delta(x)delta)", d @ mu, rhs, [n, n], [n, n]))
    rep.add(compare_maps("eps mu = eps(x)eps", e @ mu, kron(e, e), [n, n], [1]))
    rep.add(compare_maps("delta eta = eta(x)eta", d @ eta, kron(eta, eta), [1], [n, n]))
    rep.add(compare_maps("eps eta = 1", e @ eta, identity(1), [1], [1]))
    return rep


def convolve(B: Bimonoid, f: RatMat, g: RatMat) -> RatMat:
    """mu (f (x) g) delta."""
    n = B.dim
    return contract("yab,ac,bd,cdi->yi", [(B.mu, (n, n, n)), (f, (n, n)), (g, (n, n)), (B.delta, (n, n, n))], rows=n)


def check_antipode(H: HopfMonoid) -> CheckReport:
    n = H.dim
    unit = H.eta @ H.eps
    rep = CheckReport()
    rep.add(compare_maps("mu(nu(x)1)delta = eta eps", convolve(H, H.nu, identity(n)), unit, [n], [n]))
    rep.add(compare_maps("mu(1(x)nu)delta = eta eps", convolve(H, identity(n), H.nu), unit, [n], [n]))
    return rep


def check_hopf(H: HopfMonoid) -> CheckReport:
    rep = check_bimonoid(H.bimonoid)
    rep.merge(check_antipode(H))
    return rep


def fusion_operator(B: Bimonoid) -> RatMat:
    """v = (mu (x) 1)(1 (x) delta): H (x) H -> H (x) H."""
    n = B.dim
    return contract("yac,czb->yzab", [(B.mu, (n, n, n)), (B.delta, (n, n, n))], rows=n * n)


def fusion_inverse_formula(H: HopfMonoid) -> RatMat:
    """(mu (x) 1)(1 (x) nu (x) 1)(1 (x) delta)."""
    n = H.dim
    return contract(
        "yac,cd,dzb->yzab",
        [(H.mu, (n, n, n)), (H.nu, (n, n)), (H.delta, (n, n, n))],
        rows=n * n,
    )


def check_fusion_inverse(H: HopfMonoid) -> CheckReport:
    n = H.dim
    v, vbar = fusion_operator(H), fusion_inverse_formula(H)
    rep = CheckReport()
    rep.add(compare_maps("v vbar = 1", v @ vbar, identity(n * n), [n, n], [n, n]))
    rep.add(compare_maps("vbar v = 1", vbar @ v, identity(n * n), [n, n], [n, n]))
    return rep


def fusion_identities(B: Bimonoid, v: RatMat, vbar: RatMat) -> CheckReport:
    """The eight identities relating a bimonoid, its fusion operator v and v^-1."""
    n, d, e, mu, eta = B.dim, B.delta, B.eps, B.mu, B.eta
    one_delta = kron(identity(n), d)
    mu_one = kron(mu, identity(n))
    rep = CheckReport()
    for tag, w in (("'", v), ("", vbar)):
        name = "v" if tag else "vbar"
        rep.add(compare_maps(f"(i){tag} (mu(x)1)(1(x){name}) = {name}(mu(x)1)",
                             right_apply(mu_one, w, n, 1), right_apply(w, mu, 1, n), [n] * 3, [n, n]))
        rep.add(compare_maps(f"(iii){tag} (1(x)delta){name} = ({name}(x)1)(1(x)delta)",
                             left_apply(d, w, n, 1), left_apply(w, one_delta, 1, n), [n, n], [n] * 3))
    rep.add(compare_maps("(ii)' delta = v(eta(x)1)", d, right_apply(v, eta, 1, n), [n], [n, n]))
    rep.add(compare_maps("(iv)' mu = (1(x)eps)v", mu, left_apply(e, v, n, 1), [n, n], [n]))
    rep.add(compare_maps("(ii) vbar delta = eta(x)1", vbar @ d, kron(eta, identity(n)), [n], [n, n]))
    rep.add(compare_maps("(iv) mu vbar = 1(x)eps", mu @ vbar, kron(identity(n), e), [n, n], [n]))
    order = ["(i)'", "(ii)'", "(iii)'", "(iv)'", "(i)", "(ii)", "(iii)", "(iv)"]
    rep.checks.sort(key=lambda c: order.index(c.name.split(" ")[0]))
    return rep


def antipode_from_fusion(B: Bimonoid, report: CheckReport | None = None) -> HopfMonoid:
    """Antipode nu = (1 (x) eps) v^-1 (eta (x) 1) of a bimonoid with invertible fusion operator.

    Raises NoAntipodeError (carrying the fusion matrix) when v is singular.
    The antipode law, the fusion identities and the closed form
    v^-1 = (mu (x) 1)(1 (x) nu (x) 1)(1 (x) delta) are verified; the checks are
    appended to ``report`` when one is passed, otherwise any failure raises
    WellDefinednessError.
    """
    n = B.dim
    v = fusion_operator(B)
    try:
        vbar = try_inverse(v)
    except SingularError:
        raise NoAntipodeError(f"fusion operator of the {n}-dimensional bimonoid is singular", fusion=v) from None
    nu = left_apply(B.eps, vbar, n, 1) @ kron(B.eta, identity(n))
    H = HopfMonoid(B.delta, B.eps, B.mu, B.eta, nu)
    rep = check_antipode(H)
    rep.merge(fusion_identities(B, v, vbar))
    rep.add(compare_maps("v^-1 = (mu(x)1)(1(x)nu(x)1)(1(x)delta)", vbar, fusion_inverse_formula(H), [n, n], [n, n]))
    if report is not None:
        report.merge(rep)
        report.artifacts["fusion_inverse"] = vbar.to_json()
    elif not rep.passed:
        raise WellDefinednessError(f"antipode check failed: {rep.failed()[0].name}")
    return H


# ---------------------------------------------------------------------------
# linearisation
# ---------------------------------------------------------------------------


def grouplike_comonoid(n: int) -> Comonoid:
    d = np.zeros((n * n, n), dtype=np.int64)
    d[np.arange(n) * (n + 1), np.arange(n)] = 1
    return Comonoid(RatMat(d), RatMat(np.ones((1, n), dtype=np.int64)))


def _indicator(values: np.ndarray, n: int) -> RatMat:
    """Matrix sending basis vector j to e_{values[j]}."""
    values = np.asarray(values, dtype=np.int64).ravel()
    m = np.zeros((n, values.size), dtype=np.int64)
    m[values, np.arange(values.size)] = 1
    return RatMat(m)


def heap_algebra(h: HeapTable, validate: bool = True) -> Herd:
    """Q[A] with group-like basis and q read off the table.

    With ``validate=False`` tables that are not heaps are linearised too,
    which lets check_herd be compared with check_heap.
    """
    if validate:
        rep = check_heap(h)
        if not rep.passed:
            bad = rep.failed()[0]
            raise HeapAxiomError(f"not a heap: {bad.name} fails at {bad.witness['tuple']}")
    A = grouplike_comonoid(h.size)
    return Herd(A.delta, A.eps, _indicator(h.q, h.size))


def group_algebra(g: GroupTable) -> HopfMonoid:
    from .setcore import _require_group

    _require_group(g)
    n = g.size
    A = grouplike_comonoid(n)
    return HopfMonoid(A.delta, A.eps, _indicator(g.mul, n), _indicator([g.unit], n), _indicator(g.inv, n))


def monoid_algebra(mul, unit: int) -> Bimonoid:
    """Q[M] for a finite monoid table; Hopf exactly when M is a group."""
    mul = np.asarray(mul, dtype=np.int64)
    n = mul.shape[0]
    A = grouplike_comonoid(n)
    return Bimonoid(A.delta, A.eps, _indicator(mul, n), _indicator([unit], n))


def absorbing_monoid() -> Bimonoid:
    """Q[{1, 0}] with 0 absorbing; element 0 is the unit 1, element 1 is 0."""
    return monoid_algebra([[0, 1], [1, 1]], 0)


def hopf_herd(H: HopfMonoid) -> Herd:
    """The herd of a Hopf monoid, q = mu(mu (x) 1)(1 (x) nu (x) 1)."""
    n = H.dim
    q = contract("yab,acd,de->yceb", [(H.mu, (n, n, n)), (H.mu, (n, n, n)), (H.nu, (n, n))], rows=n)
    return Herd(H.delta, H.eps, q)


def trivial_herd() -> Herd:
    one = identity(1)
    return Herd(one, one, one)


def comatrix_comonoid(k: int) -> Comonoid:
    """Dual of the k x k matrix algebra: delta(e_ij) = sum_l e_il (x) e_lj."""
    n = k * k
    d = np.zeros((n * n, n), dtype=np.int64)
    e = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        e[0, i * k + i] = 1
        for j in range(k):
            for l in range(k):
                d[(i * k + l) * n + (l * k + j), i * k + j] = 1
    return Comonoid(RatMat(d), RatMat(e))


def sweedler() -> HopfMonoid:
    """Sweedler's 4-dimensional Hopf algebra on 1, g, x, gx.

    g^2 = 1, x^2 = 0, xg = -gx, delta(g) = g(x)g, delta(x) = x(x)1 + g(x)x,
    eps(x) = 0, nu(g) = g, nu(x) = -gx.
    """
    # basis index 2*s + t for g^s x^t; product via g^s x^t g^u x^w = (-1)^(t u) g^(s+u) x^(t+w)
    n = 4
    mu = np.zeros((n, n * n), dtype=np.int64)
    for s, t, u, w in np.ndindex(2, 2, 2, 2):
        if t + w < 2:
            mu[2 * ((s + u) % 2) + t + w, (2 * s + t) * n + 2 * u + w] = (-1) ** (t * u)
    d = np.zeros((n * n, n), dtype=np.int64)
    for s in range(2):
        gs, gsx = 2 * s, 2 * s + 1
        d[gs * n + gs, gs] = 1
        # delta(g^s x) = g^s x (x) g^s + g^(s+1) (x) g^s x
        d[gsx * n + gs, gsx] = 1
        d[(2 * ((s + 1) % 2)) * n + gsx, gsx] = 1
    eps = np.array([[1, 0, 1, 0]], dtype=np.int64)
    eta = np.array([[1], [0], [0], [0]], dtype=np.int64)
    nu = np.zeros((n, n), dtype=np.int64)
    nu[0, 0] = nu[2, 2] = 1
    nu[3, 1] = -1  # x -> -gx
    nu[1, 3] = 1  # gx -> x
    return HopfMonoid(RatMat(d), RatMat(eps), RatMat(mu), RatMat(eta), RatMat(nu))
