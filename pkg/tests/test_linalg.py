from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from herdkit import kernels
from herdkit.errors import FactorizationError, SingularError
from herdkit.linalg import (
    FactorPerm,
    RatMat,
    basis_vector,
    braid,
    cokernel,
    contract,
    factor_through_surjection,
    format_rat,
    hstack,
    identity,
    kron,
    left_apply,
    parse_rat,
    perm_matrix,
    permute_cols,
    permute_rows,
    rank,
    right_apply,
    try_inverse,
    zeros,
)

from oracles import frac, mat_kron, mat_mul, mat_rank, placement_image

small = st.integers(-4, 4)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def ratmats(draw, rows=None, cols=None, elements=fractions, max_dim=4):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    vals = draw(st.lists(elements, min_size=r * c, max_size=r * c))
    return RatMat.from_entries(r, c, vals)


# -- Rat / RatMat basics --------------------------------------------------------


@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), ("0", Fraction(0)),
                                        (" 7/21 ", Fraction(1, 3))])
def test_parse_rat(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", "", "1/2/3"])
def test_parse_rat_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rat(bad)


@given(fractions)
def test_format_parse_roundtrip(x):
    assert parse_rat(format_rat(x)) == x


def test_lowest_terms():
    m = RatMat.from_rows([[Fraction(2, 4), Fraction(3, 9)]])
    assert m.tolist() == [[Fraction(1, 2), Fraction(1, 3)]]
    assert m.to_json()["entries"] == ["1/2", "1/3"]


@given(ratmats(), ratmats())
def test_matmul_matches_fraction_oracle(a, b):
    b = RatMat.from_entries(a.cols, b.cols, [b[i % b.rows, j] for i in range(a.cols) for j in range(b.cols)])
    assert (a @ b).tolist() == mat_mul(a, b)


def test_overflow_promotes_to_python_ints():
    big = RatMat.from_rows([[2**40, 2**40], [2**40, 2**40]])
    p = big @ big @ big
    assert p[0, 0] == 4 * 2**120


# -- kron ------------------------------------------------------------------------


def test_kron_identity():
    assert kron(identity(2), identity(3)) == identity(6)


def test_kron_basis_convention():
    assert kron(basis_vector(2, 0), basis_vector(2, 1)) == basis_vector(4, 1)


def test_kron_scalar_block():
    assert kron(RatMat.from_rows([[0, 1], [1, 0]]), RatMat.from_rows([[2]])) == RatMat.from_rows([[0, 2], [2, 0]])


@given(ratmats(max_dim=3), ratmats(max_dim=3))
def test_kron_matches_oracle(f, g):
    assert kron(f, g).tolist() == mat_kron(f, g)


@given(st.data())
def test_kron_functorial(data):
    a, b, c = (data.draw(st.integers(1, 3)) for _ in range(3))
    x, y, z = (data.draw(st.integers(1, 3)) for _ in range(3))
    f, f2 = data.draw(ratmats(a, b)), data.draw(ratmats(b, c))
    g, g2 = data.draw(ratmats(x, y)), data.draw(ratmats(y, z))
    assert kron(f, g) @ kron(f2, g2) == kron(f @ f2, g @ g2)


# -- factor permutations ------------------------------------------------------------


def test_braiding_swap_example():
    p = FactorPerm((2, 3), (2, 1))
    col = perm_matrix(p).column(1)
    assert [i for i, v in enumerate(col) if v] == [2]


@pytest.mark.parametrize("dims,placement,src,dst", [
    ((2, 2, 2, 2), (1, 3, 4, 2), 4, 2),
    ((2,) * 6, (1, 4, 5, 2, 3, 6), 22, 28),
])
def test_perm_matrix_examples(dims, placement, src, dst):
    P = perm_matrix(FactorPerm(dims, placement))
    assert [i for i, v in enumerate(P.column(src)) if v] == [dst]


@given(st.permutations(range(1, 5)), st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_perm_matrix_matches_bit_oracle(placement, dims):
    p = FactorPerm(dims, placement)
    P = perm_matrix(p)
    for j in range(p.size):
        assert [i for i, v in enumerate(P.column(j)) if v] == [placement_image(j, dims, placement)]


@given(st.permutations(range(1, 4)), st.permutations(range(1, 4)), st.lists(st.integers(1, 3), min_size=3, max_size=3))
def test_perm_matrix_composition(p1, p2, dims):
    a = FactorPerm(dims, p1)
    b = FactorPerm(a.out_dims, p2)
    assert perm_matrix(a.then(b)) == perm_matrix(b) @ perm_matrix(a)


@pytest.mark.parametrize("dims", [(2,), (2, 3), (1, 2, 3)])
def test_perm_matrix_identity(dims):
    p = FactorPerm.identity(dims)
    assert perm_matrix(p) == identity(p.size)


def test_braid_word():
    assert braid("1342", (2, 2, 2, 2)).placement == (1, 3, 4, 2)
    with pytest.raises(ValueError):
        FactorPerm((2, 2), (1, 1))


@given(st.permutations(range(1, 4)), ratmats(12, 2))
def test_permute_rows_cols(placement, x):
    p = FactorPerm((2, 3, 2), placement)
    assert permute_rows(p, x) == perm_matrix(p) @ x
    assert permute_cols(x.T, p) == x.T @ perm_matrix(p)


@given(ratmats(2, 3), ratmats(12, 2))
def test_left_right_apply(f, x):
    full = kron(kron(identity(2), f), identity(2))
    assert left_apply(f, x, 2, 2) == full @ x
    y = x.T  # 2 x 12
    assert right_apply(y, f.T, 2, 2) == y @ kron(kron(identity(2), f.T), identity(2))


def test_contract_is_matrix_product():
    a = RatMat.from_rows([[1, 2], [3, 4]])
    b = RatMat.from_rows([[Fraction(1, 2), 0], [0, 5]])
    assert contract("ij,jk->ik", [(a, (2, 2)), (b, (2, 2))], rows=2) == a @ b


# -- cokernel, factorization, inverse ---------------------------------------------------


def test_cokernel_zero_map():
    proj, d = cokernel(zeros(3, 2))
    assert d == 3 and proj == identity(3)


def test_cokernel_difference_vector():
    proj, d = cokernel(RatMat.from_rows([[1], [-1]]))
    assert d == 1
    assert proj == RatMat.from_rows([[1, 1]])


def test_cokernel_invertible():
    proj, d = cokernel(RatMat.from_rows([[1, 2], [3, 4]]))
    assert d == 0 and proj.shape == (0, 2)


@given(ratmats(max_dim=5))
def test_cokernel_properties(f):
    proj, d = cokernel(f)
    assert (proj @ f).is_zero()
    assert d == f.rows - mat_rank(f)
    assert proj.rows == d and mat_rank(proj) == d
    # deterministic
    assert cokernel(f)[0] == proj


def test_factor_scalar():
    assert factor_through_surjection(RatMat.from_rows([[2, 2]]), RatMat.from_rows([[1, 1]])) == RatMat.from_rows([[2]])


def test_factor_kernel_not_contained():
    with pytest.raises(FactorizationError):
        factor_through_surjection(RatMat.from_rows([[1, 0]]), RatMat.from_rows([[1, 1]]))


def test_factor_needs_surjection():
    with pytest.raises(ValueError):
        factor_through_surjection(RatMat.from_rows([[1, 0]]), RatMat.from_rows([[1, 0], [2, 0]]))


@given(ratmats(max_dim=4))
def test_factor_property(g):
    # a surjection: identity block next to a fixed extra block
    k = g.cols
    extra = RatMat.from_entries(k, 2, [Fraction(i - j) for i in range(k) for j in range(2)])
    p = hstack([identity(k), extra])
    f = g @ p
    assert factor_through_surjection(f, p) @ p == f


@pytest.mark.parametrize("m,inv", [
    ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], None),
    ([[1, 1], [0, 1]], [[1, -1], [0, 1]]),
])
def test_try_inverse_examples(m, inv):
    f = RatMat.from_rows(m)
    got = try_inverse(f)
    assert got == (f if inv is None else RatMat.from_rows(inv))


def test_try_inverse_singular():
    with pytest.raises(SingularError):
        try_inverse(RatMat.from_rows([[1, 2], [2, 4]]))


@given(ratmats(3, 3))
def test_try_inverse_property(f):
    if mat_rank(f) < 3:
        with pytest.raises(SingularError):
            try_inverse(f)
        return
    g = try_inverse(f)
    assert g @ f == identity(3) == f @ g


@given(ratmats(max_dim=5))
def test_rank_matches_oracle(f):
    assert rank(f) == mat_rank(f)


@given(ratmats(max_dim=4))
def test_json_roundtrip(f):
    assert RatMat.from_json(f.to_json()) == f


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_backends_agree_on_cokernel(backend):
    f = RatMat.from_rows([[1, 0, -1], [2, 1, 0], [0, 3, 1], [1, 1, 1]])
    with kernels.using(backend):
        proj, d = cokernel(f)
    assert (proj @ f).is_zero() and d == 1
    assert frac(proj) == frac(cokernel(f)[0])
