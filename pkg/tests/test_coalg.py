import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herdkit import coalg
from herdkit.coalg import (
    HERD_AXIOMS,
    Comonoid,
    Herd,
    absorbing_monoid,
    antipode_from_fusion,
    check_antipode,
    check_bimonoid,
    check_comonoid,
    check_comonoid_morphism,
    check_fusion_inverse,
    check_herd,
    check_hopf,
    comatrix_comonoid,
    fusion_identities,
    fusion_operator,
    group_algebra,
    grouplike_comonoid,
    heap_algebra,
    hopf_herd,
    monoid_algebra,
    opposite_comonoid,
    sweedler,
    tensor_comonoid,
    trivial_comonoid,
    trivial_herd,
)
from herdkit.corpus import cyclic, symmetric3, xor_heap
from herdkit.errors import HeapAxiomError, NoAntipodeError
from herdkit.linalg import RatMat, identity, swap, try_inverse, zeros
from herdkit.report import CheckReport
from herdkit.setcore import HeapTable, check_heap, group_to_heap

from conftest import GROUPS
from oracles import frac, grouplike_delta, herd_q_matrix, mat_rank


def bimonoid_of(H):
    return H.bimonoid if isinstance(H, coalg.HopfMonoid) else H


# -- comonoids ----------------------------------------------------------------------


def test_grouplike_c2():
    A = grouplike_comonoid(2)
    assert frac(A.delta) == grouplike_delta(2)
    assert check_comonoid(A).passed


def test_zero_delta_fails_counit():
    rep = check_comonoid(Comonoid(zeros(4, 2), RatMat.from_rows([[1, 1]])))
    assert not rep["left counit"].passed and rep["left counit"].witness is not None


def test_comatrix_coalgebra():
    A = comatrix_comonoid(2)
    assert check_comonoid(A).passed
    # delta(e_01) = e_00 (x) e_01 + e_01 (x) e_11
    col = A.delta.column(1)
    assert [i for i, v in enumerate(col) if v] == [0 * 4 + 1, 1 * 4 + 3]


def test_opposite():
    A = grouplike_comonoid(3)
    assert opposite_comonoid(A) == A
    C = comatrix_comonoid(2)
    Co = opposite_comonoid(C)
    assert Co.delta == swap(4, 4) @ C.delta
    assert Co != C and check_comonoid(Co).passed
    assert opposite_comonoid(Co) == C


def test_tensor_grouplikes():
    AA = tensor_comonoid(grouplike_comonoid(2), grouplike_comonoid(2))
    assert frac(AA.delta) == grouplike_delta(4)


def test_tensor_unit():
    C = comatrix_comonoid(2)
    assert tensor_comonoid(C, trivial_comonoid()) == C


@pytest.mark.parametrize("factors", [(grouplike_comonoid(2), comatrix_comonoid(2)),
                                     (comatrix_comonoid(2), opposite_comonoid(comatrix_comonoid(2)), grouplike_comonoid(1))])
def test_constructors_preserve_comonoids(factors):
    T = tensor_comonoid(*factors)
    assert check_comonoid(T).passed
    assert check_comonoid(opposite_comonoid(T)).passed


def test_morphism_examples():
    C = comatrix_comonoid(2)
    assert check_comonoid_morphism(identity(4), C, C).passed
    assert check_comonoid_morphism(C.eps, C, trivial_comonoid()).passed
    assert not check_comonoid_morphism(zeros(4, 4), C, C).passed


# -- herds ---------------------------------------------------------------------------------


def test_c3_herd_matches_table(c3_herd):
    h = group_to_heap(cyclic(3))
    assert frac(c3_herd.q) == herd_q_matrix(h.q)
    # q(e_x (x) e_y (x) e_z) = e_{x - y + z}
    for x, y, z in itertools.product(range(3), repeat=3):
        col = c3_herd.q.column((x * 3 + y) * 3 + z)
        assert [i for i, v in enumerate(col) if v] == [(x - y + z) % 3]
    rep = check_herd(c3_herd)
    assert rep.passed
    assert all(a in rep for a in HERD_AXIOMS)


def test_non_grouplike_delta_fails_a(c2_herd):
    # delta(e_1) = e_1 (x) e_1 + e_0 (x) e_1 - e_0 (x) e_0 keeps the counit laws on e_0 but breaks (a)
    d = c2_herd.delta.tolist()
    d[0][1], d[1][1] = Fraction(-1), Fraction(1)
    bad = Herd(RatMat.from_rows(d), c2_herd.eps, c2_herd.q)
    rep = check_herd(bad)
    assert not rep[HERD_AXIOMS[0]].passed
    assert "tuple" in rep[HERD_AXIOMS[0]].witness or "part" in rep[HERD_AXIOMS[0]].witness


def test_trivial_herd():
    assert check_herd(trivial_herd()).passed


def test_heap_algebra_xor(c2_herd):
    assert frac(c2_herd.q) == herd_q_matrix(xor_heap().q)
    assert check_herd(c2_herd).passed


def test_heap_algebra_validates():
    with pytest.raises(HeapAxiomError):
        heap_algebra(HeapTable.from_function(3, lambda x, y, z: (x + y + z) % 3))


@given(st.integers(1, 2).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=n**3, max_size=n**3))))
def test_herd_iff_heap(data):
    n, vals = data
    h = HeapTable(n, vals)
    assert check_herd(heap_algebra(h, validate=False)).passed == check_heap(h).passed


@pytest.mark.parametrize("n,q", [
    (3, lambda x, y, z: (x + y + z) % 3),
    (3, lambda x, y, z: x),
    (4, lambda x, y, z: (x * y + z) % 4),
    (4, lambda x, y, z: x ^ y ^ z),
    (3, lambda x, y, z: (2 * x - y + z) % 3),
])
def test_herd_iff_heap_size_3_4(n, q):
    h = HeapTable.from_function(n, q)
    assert check_herd(heap_algebra(h, validate=False)).passed == check_heap(h).passed


# -- bimonoids, Hopf monoids, fusion --------------------------------------------------------


def test_group_algebra_trivial():
    H = group_algebra(cyclic(1))
    assert H.dim == 1 and check_hopf(H).passed


def test_group_algebra_s3():
    assert check_hopf(group_algebra(symmetric3())).passed


def test_fusion_c2():
    v = fusion_operator(group_algebra(cyclic(2)))
    for h, k in itertools.product(range(2), repeat=2):
        col = v.column(h * 2 + k)
        assert [i for i, x in enumerate(col) if x] == [((h + k) % 2) * 2 + k]


def test_fusion_dim1():
    assert fusion_operator(group_algebra(cyclic(1))) == identity(1)


def test_absorbing_fusion_singular():
    B = absorbing_monoid()
    assert check_bimonoid(B).passed
    v = fusion_operator(B)
    # index 0 is the unit 1, index 1 the absorbing 0: v(1 (x) 0) = v(0 (x) 0) = e_0 (x) e_0
    assert v.column(0 * 2 + 1) == v.column(1 * 2 + 1)
    assert [i for i, x in enumerate(v.column(3)) if x] == [3]
    assert mat_rank(v) < 4
    with pytest.raises(NoAntipodeError) as exc:
        antipode_from_fusion(B)
    assert exc.value.fusion == v


def test_antipode_c3():
    H = antipode_from_fusion(group_algebra(cyclic(3)).bimonoid)
    for x in range(3):
        assert [i for i, v in enumerate(H.nu.column(x)) if v] == [(-x) % 3]
    assert check_antipode(H).passed


def test_antipode_dim1():
    assert antipode_from_fusion(group_algebra(cyclic(1)).bimonoid).nu == identity(1)


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_antipode_recovers_inverse(g):
    H = group_algebra(g)
    rep = CheckReport()
    got = antipode_from_fusion(H.bimonoid, rep)
    assert got.nu == H.nu
    assert rep.passed
    assert check_fusion_inverse(H).passed


def test_sweedler():
    H = sweedler()
    assert check_hopf(H).passed
    assert not (H.nu @ H.nu == identity(4))  # nu has order 4
    assert antipode_from_fusion(H.bimonoid).nu == H.nu
    assert check_fusion_inverse(H).passed


@pytest.mark.parametrize("H", [group_algebra(cyclic(4)), sweedler()], ids=["C4", "sweedler"])
def test_fusion_identities(H):
    v = fusion_operator(H)
    rep = fusion_identities(H, v, try_inverse(v))
    assert rep.passed
    assert [c.name.split(" ")[0] for c in rep.checks] == ["(i)'", "(ii)'", "(iii)'", "(iv)'", "(i)", "(ii)", "(iii)", "(iv)"]


def test_fusion_identities_detect_wrong_inverse():
    H = group_algebra(cyclic(3))
    v = fusion_operator(H)
    assert not fusion_identities(H, v, identity(9)).passed


def test_monoid_algebra_of_group_is_hopf():
    g = cyclic(4)
    B = monoid_algebra(g.mul, g.unit)
    assert antipode_from_fusion(B).nu == group_algebra(g).nu


@pytest.mark.parametrize("H", [group_algebra(symmetric3()), sweedler()], ids=["S3", "sweedler"])
def test_hopf_herd(H):
    assert check_herd(hopf_herd(H)).passed


def test_hopf_herd_of_group_is_heap_algebra():
    g = symmetric3()
    assert hopf_herd(group_algebra(g)) == heap_algebra(group_to_heap(g))


def test_shape_validation():
    with pytest.raises(ValueError):
        Herd(identity(2), RatMat.from_rows([[1, 1]]), identity(2))
