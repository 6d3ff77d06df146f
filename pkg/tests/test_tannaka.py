import itertools

import pytest

from herdkit.coalg import check_comonoid, check_herd, heap_algebra, trivial_herd
from herdkit.corpus import cyclic, groups_up_to
from herdkit.errors import ComoduleAxiomError, MissingObjectError
from herdkit.linalg import RatMat, identity, kron, zeros
from herdkit.setcore import group_to_heap
from herdkit.tannaka import (
    Diagram,
    check_diagram,
    coefficient_map,
    coend,
    coend_comonoid,
    coend_herd,
    herd_iso_check,
    reconstruct_herd,
    relation_matrix,
    simple_diagram,
)
from herdkit.vflock import duals, regular_comodule, trivial_comodule, weight_comodule

from oracles import mat_rank


def herd_of(g):
    return heap_algebra(group_to_heap(g))


def support(col):
    return [i for i, v in enumerate(col) if v]


@pytest.fixture(scope="module")
def A2():
    return herd_of(cyclic(2))


def test_single_trivial_object():
    T = trivial_herd()
    E = reconstruct_herd(Diagram((trivial_comodule(T, 1),)), T)
    assert E.dim == 1
    assert E.deltaE == identity(1) and E.epsE == identity(1) and E.qE == identity(1)
    assert E.report.passed


def test_identity_morphism_collapses_summands():
    T = trivial_herd()
    V = trivial_comodule(T, 1)
    D = Diagram((V, V), ((0, 1, identity(1)),))
    R = relation_matrix(D)
    assert mat_rank(R) == 1
    assert coend(D).dim == 1


def test_c2_weights_identities_only(A2):
    D = Diagram((weight_comodule(A2, 0), weight_comodule(A2, 1)), ((0, 0, identity(1)), (1, 1, identity(1))))
    assert mat_rank(relation_matrix(D)) == 0
    E = coend_comonoid(coend(D))
    assert E.dim == 2
    assert E.report.passed
    # two group-like classes, counit 1 on both
    assert E.epsE == RatMat.from_rows([[1, 1]])
    for i in range(2):
        c = E.copr(i)
        assert E.deltaE @ c == kron(c, c)


def test_regular_object_comatrix(A2):
    E = coend_comonoid(coend(Diagram((regular_comodule(A2),))))
    assert E.dim == 4
    assert check_comonoid(E.comonoid).passed
    with pytest.raises(MissingObjectError):
        coend_herd(E, A2)


def test_c2_coend_herd_matches_heap(A2):
    E = reconstruct_herd(simple_diagram(A2, [0, 1]), A2)
    assert E.report.passed
    classes = [support(E.copr(i).column(0)) for i in range(2)]
    assert all(len(c) == 1 for c in classes)
    label = {c[0]: i for i, c in enumerate(classes)}
    for x, y, z in itertools.product(range(2), repeat=3):
        col = E.qE.column((classes[x][0] * 2 + classes[y][0]) * 2 + classes[z][0])
        assert [label[i] for i in support(col)] == [x ^ y ^ z]
    f = coefficient_map(E)
    assert herd_iso_check(E, A2, f).passed


def test_c3_simples():
    A = herd_of(cyclic(3))
    E = reconstruct_herd(simple_diagram(A, [0, 1, 2]), A)
    assert E.dim == 3 and check_herd(E.herd).passed
    assert herd_iso_check(E, A, coefficient_map(E)).passed


@pytest.mark.parametrize("g", groups_up_to(4), ids=lambda g: g.name)
def test_simples_reconstruct_group_herd(g):
    A = herd_of(g)
    E = reconstruct_herd(simple_diagram(A, range(g.size)), A)
    assert E.dim == g.size
    assert E.report.passed
    assert herd_iso_check(E, A, coefficient_map(E)).passed


def test_iso_check_identity_and_zero(A2):
    E = reconstruct_herd(simple_diagram(A2, [0, 1]), A2)
    assert herd_iso_check(E, E.herd, identity(2)).passed
    assert not herd_iso_check(E, A2, zeros(2, 2))["f invertible"].passed


def test_duplicate_object_keeps_dim(A2):
    W = weight_comodule
    base = Diagram((W(A2, 0), W(A2, 1)))
    dup = Diagram((W(A2, 0), W(A2, 1), W(A2, 1)), ((1, 2, RatMat.from_rows([[2]])),))
    assert coend(dup).dim == coend(base).dim == 2


def test_counit_on_coevaluation(A2):
    R = regular_comodule(A2)
    E = coend_comonoid(coend(Diagram((R, weight_comodule(A2, 1)))))
    for i, X in enumerate(E.diagram.objects):
        d = duals(X.dim)
        assert E.epsE @ E.copr(i) == d.ev
        assert E.epsE @ E.copr(i) @ d.coev == RatMat.from_rows([[X.dim]])


def test_diagram_validation(A2):
    W = weight_comodule(A2, 0)
    with pytest.raises(ValueError):
        Diagram((W,), ((0, 1, identity(1)),))
    with pytest.raises(ValueError):
        Diagram(())
    # a non-comodule map between weights 0 and 1
    D = Diagram((weight_comodule(A2, 0), weight_comodule(A2, 1)), ((0, 1, identity(1)),))
    assert not check_diagram(D).passed
    with pytest.raises(ComoduleAxiomError):
        coend(D)
