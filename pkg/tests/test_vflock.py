import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herdkit.coalg import heap_algebra, hopf_herd, sweedler, trivial_herd
from herdkit.corpus import cyclic, symmetric3
from herdkit.errors import ComoduleAxiomError
from herdkit.linalg import RatMat, identity, kron, zeros
from herdkit.setcore import group_to_heap
from herdkit.vflock import (
    DENSE_BUDGET,
    Comodule,
    alpha,
    beta,
    check_comodule,
    check_comodule_morphism,
    check_duals,
    flock_maps,
    pentagon,
    q_coaction,
    q_comodule,
    q_on_maps,
    regular_comodule,
    triangle,
    trivial_comodule,
    unit_object_check,
    weight_comodule,
)

from oracles import weight_of

C2, C3 = cyclic(2), cyclic(3)


def herd_of(g):
    return heap_algebra(group_to_heap(g))


def weight(M: Comodule) -> int:
    col = M.rho.column(0)
    hits = [i for i, v in enumerate(col) if v]
    assert M.dim == 1 and len(hits) == 1 and col[hits[0]] == 1
    return hits[0]


@pytest.fixture(scope="module")
def A2():
    return herd_of(C2)


@pytest.fixture(scope="module")
def A3():
    return herd_of(C3)


# -- comodules --------------------------------------------------------------------------


def test_regular_comodule(A3):
    assert check_comodule(regular_comodule(A3)).passed


@pytest.mark.parametrize("g", range(3))
def test_weight_comodule(A3, g):
    assert check_comodule(weight_comodule(A3, g)).passed


def test_zero_coaction_fails_counit(A2):
    rep = check_comodule(Comodule(2, A2, zeros(4, 2)))
    assert not rep["counit"].passed


def test_duals_snake():
    for m in (1, 2, 3):
        assert check_duals(m).passed


def test_bad_comodule_refused(A2):
    bad = Comodule(1, A2, RatMat.from_rows([[1], [1]]))
    with pytest.raises(ComoduleAxiomError):
        q_comodule(A2, bad, bad, bad)


# -- Q on objects ----------------------------------------------------------------------------


@pytest.mark.parametrize("a,b,c", list(itertools.product(range(2), repeat=3)))
def test_q_of_c2_weights(A2, a, b, c):
    Q = q_comodule(A2, *(weight_comodule(A2, x) for x in (a, b, c)))
    assert check_comodule(Q).passed
    assert weight(Q) == (a + b + c) % 2


@pytest.mark.parametrize("g", [C3, symmetric3()], ids=["C3", "S3"])
def test_weight_oracle(g):
    A = herd_of(g)
    for a, b, c in itertools.product(range(g.size), repeat=3):
        W = weight_comodule
        assert weight(q_comodule(A, W(A, a), W(A, b), W(A, c))) == weight_of(g.mul, g.inv, a, b, c)


def test_q_regular_c2(A2):
    R = regular_comodule(A2)
    Q = q_comodule(A2, R, R, R)
    assert Q.dim == 8 and check_comodule(Q).passed


def test_q_over_trivial_herd():
    T = trivial_herd()
    L, M, N = (trivial_comodule(T, m) for m in (2, 3, 2))
    Q = q_comodule(T, L, M, N)
    assert Q.dim == 12 and Q.rho == identity(12)


@pytest.mark.parametrize("make", [
    lambda: (herd_of(C2), "regular"),
    lambda: (herd_of(C3), "mixed"),
    lambda: (hopf_herd(sweedler()), "regular"),
], ids=["C2", "C3", "sweedler"])
def test_contracted_coaction_matches_literal(make):
    A, kind = make()
    R = regular_comodule(A)
    objs = (R, R, R) if kind == "regular" else (R, weight_comodule(A, 1), R)
    assert q_coaction(A, *objs) == q_coaction(A, *objs, literal=True)


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_contracted_matches_literal_on_weights(ws):
    A = herd_of(C3)
    objs = [weight_comodule(A, w) for w in ws]
    assert q_coaction(A, *objs) == q_coaction(A, *objs, literal=True)


def test_q_on_maps_contravariant_middle():
    f = RatMat.from_rows([[1, 2]])
    g = RatMat.from_rows([[1], [3]])
    assert q_on_maps(f, g, identity(1)) == kron(f, g.T)


# -- flock maps and conditions -------------------------------------------------------------------


def test_trivial_herd_flock():
    T = trivial_herd()
    objs = [trivial_comodule(T, m) for m in (2, 3, 2, 1, 2)]
    data = flock_maps(T, *objs)
    assert data.report.passed
    assert data.report["triangle"].passed and data.report["pentagon commutes"].passed


@pytest.mark.parametrize("ws", list(itertools.product(range(2), repeat=5)))
def test_c2_weight_flock(A2, ws):
    objs = [weight_comodule(A2, w) for w in ws]
    data = flock_maps(A2, *objs)
    assert data.report.passed
    a, b, c, d, e = ws
    Q = q_comodule(A2, q_comodule(A2, *objs[:3]), objs[3], objs[4])
    assert weight(Q) == (a - b + c - d + e) % 2


def test_c3_weight_flock(A3):
    objs = [weight_comodule(A3, w) for w in (0, 1, 2, 2, 1)]
    assert flock_maps(A3, *objs).report.passed


def test_regular_c2_flock(A2):
    R = regular_comodule(A2)
    rep = flock_maps(A2, R, R, R, R, R).report
    assert rep.passed
    for name in ("phi comodule morphism", "alpha comodule morphism", "beta comodule morphism",
                 "Q(1,1,beta) comodule morphism", "Q(alpha,1,1) comodule morphism"):
        assert rep[name].passed


def test_snake(A2):
    M = regular_comodule(A2)
    assert alpha(M, M) @ beta(M, M) == identity(M.dim)
    assert triangle(M, M, M).passed


def test_alpha_on_wrong_shape_is_reported(A2):
    M = regular_comodule(A2)
    chk = check_comodule_morphism(identity(3), M, M, "x")
    assert not chk.passed and chk.witness["expected"] == [2, 2]


def test_pentagon_budget():
    A = hopf_herd(sweedler())
    R = regular_comodule(A)
    with pytest.raises(ValueError):
        pentagon(A, [R] * 7)
    assert 4**14 * 4 > DENSE_BUDGET


# -- unit objects ----------------------------------------------------------------------------------


def test_unit_object_trivial_herd():
    T = trivial_herd()
    J = trivial_comodule(T, 1)
    objs = [trivial_comodule(T, m) for m in (1, 2, 3)]
    rep = unit_object_check(T, J, objs)
    assert rep.passed
    assert rep.artifacts["tensor"]["V2*V3"]["dim"] == 6
    assert rep.artifacts["dual"]["V3"]["dim"] == 3


def test_unit_object_c2_q0(A2):
    objs = [weight_comodule(A2, 0), weight_comodule(A2, 1)]
    rep = unit_object_check(A2, objs[0], objs)
    assert rep.passed and not rep.notes
    for a, b in itertools.product(range(2), repeat=2):
        rho = RatMat.from_json(rep.artifacts["tensor"][f"Q_{a}*Q_{b}"]["rho"])
        assert [i for i, v in enumerate(rho.column(0)) if v] == [(a + b) % 2]
    for a in range(2):
        rho = RatMat.from_json(rep.artifacts["dual"][f"Q_{a}"]["rho"])
        assert [i for i, v in enumerate(rho.column(0)) if v] == [(-a) % 2]


def test_unit_object_c2_q1(A2):
    objs = [weight_comodule(A2, 0), weight_comodule(A2, 1)]
    rep = unit_object_check(A2, objs[1], objs)
    assert rep.passed
    assert all(rep[f"{t} Q_{a} invertible"].passed for t in ("alpha", "beta") for a in range(2))
    assert rep.notes
