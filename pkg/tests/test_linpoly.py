import numpy as np
import pytest
from hypothesis import given, strategies as st

from rsrepair.field import FieldError, Subspace, create_field
from rsrepair.linpoly import (
    LinearizedPoly,
    chain_depths,
    check_P1,
    check_P2,
    check_P3,
    check_P4,
    subspace_poly,
    tau,
    trace_poly,
)
from rsrepair.poly import polymul, trim

from conftest import field

SMALL = ["gf8", "gf16", "gf64", "gf9", "gf81", "gf64_over_gf4", "gf81_over_gf9", "gf25"]


def _random_poly(F, rng, length=None):
    length = F.ell if length is None else length
    return LinearizedPoly(F, [int(x) for x in rng.integers(0, F.order, size=length)])


@pytest.mark.parametrize("name", SMALL)
def test_evaluation_is_fq_linear(name):
    F = field(name)
    rng = np.random.default_rng(0)
    L = _random_poly(F, rng)

    @given(st.integers(0, F.order - 1), st.integers(0, F.order - 1), st.sampled_from(F.fq_elements))
    def check(a, b, c):
        assert L(F.add(a, b)) == F.add(L(a), L(b))
        assert L(F.mul(c, a)) == F.mul(c, L(a))

    check()


@pytest.mark.parametrize("name", SMALL)
def test_rank_nullity_200_random(name):
    F = field(name)
    rng = np.random.default_rng(42)
    xs = np.arange(F.order, dtype=np.int64)
    for trial in range(200):
        L = _random_poly(F, rng)
        if trial % 7 == 0:
            # force a nontrivial kernel: compose with a subspace polynomial
            W = Subspace.span(F, [int(x) for x in rng.integers(1, F.order, size=2)])
            L = L.compose(subspace_poly(F, W))
        K, I = L.kernel(), L.image()
        assert K.dim + I.dim == F.ell
        vals = L.veval(xs)
        assert int(np.count_nonzero(vals == 0)) == F.q**K.dim
        assert len(set(vals.tolist())) == F.q**I.dim
        assert all(L(k) == 0 for k in K.basis)


@pytest.mark.parametrize("name", SMALL)
def test_composition_is_evaluation_composition(name):
    F = field(name)
    rng = np.random.default_rng(1)
    xs = np.arange(F.order, dtype=np.int64)
    for _ in range(10):
        A, B = _random_poly(F, rng), _random_poly(F, rng)
        C = A.compose(B)
        assert np.array_equal(C.veval(xs), A.veval(B.veval(xs)))
        assert np.array_equal(A.compose(B, reduce=False).veval(xs), C.veval(xs))


@pytest.mark.parametrize("name", SMALL)
def test_matrix_roundtrip(name):
    F = field(name)
    rng = np.random.default_rng(2)
    for _ in range(10):
        L = _random_poly(F, rng)
        assert LinearizedPoly.from_matrix(F, L.matrix()) == L


@pytest.mark.parametrize("name", SMALL)
def test_associate_turns_composition_into_product(name):
    F = field(name)
    rng = np.random.default_rng(3)
    fq = np.asarray(F.fq_elements)
    for _ in range(10):
        A = LinearizedPoly(F, [int(x) for x in rng.choice(fq, size=3)])
        B = LinearizedPoly(F, [int(x) for x in rng.choice(fq, size=3)])
        prod = polymul(F, A.associate(), B.associate())
        assert trim(A.compose(B, reduce=False).associate()) == trim(prod)


def test_associate_rejects_coefficients_outside_fq():
    F = field("gf16")
    with pytest.raises(FieldError):
        LinearizedPoly(F, [2, 1]).associate()


@pytest.mark.parametrize("name", SMALL)
def test_subspace_poly_roots_and_tau(name):
    F = field(name)
    rng = np.random.default_rng(5)
    xs = np.arange(F.order, dtype=np.int64)
    for dim in range(1, F.ell + 1):
        while True:
            W = Subspace.span(F, [int(x) for x in rng.integers(1, F.order, size=dim)])
            if W.dim == dim:
                break
        L = subspace_poly(F, W)
        assert L.coeffs[-1] == 1 and L.q_degree == dim
        roots = {int(x) for x in xs[L.veval(xs) == 0]}
        assert roots == set(W.elements())
        prod = 1
        for w in W.elements():
            if w:
                prod = F.mul(prod, w)
        assert tau(F, W, L) == prod == L.coeffs[0]


def test_trace_poly_is_trace():
    F = field("gf256")
    T = trace_poly(F, 1)
    assert all(T(a) == F.trace(a) for a in range(F.order))
    T4 = trace_poly(F, 4)
    assert T4.coeffs == [1, 0, 0, 0, 1]


def test_subspace_poly_untabled_field():
    F = create_field(2, 1, 18)
    W = Subspace.span(F, [1, 2, 4, 1 << 10])
    L = subspace_poly(F, W)
    assert all(L(w) == 0 for w in W.elements())
    assert L.q_degree == 4


@pytest.mark.parametrize("ell, m, expect", [(8, 3, (2, 1, 2)), (4, 2, (1, 1, 0)), (6, 4, (1, 0, 2)), (3, 1, (2, 2, 0))])
def test_chain_depths(ell, m, expect):
    assert chain_depths(ell, m) == expect


def test_subfield_predicates():
    F = field("gf16")
    W = Subspace.subfield(F, 2)
    L = subspace_poly(F, W)
    assert L.coeffs == [1, 0, 1]
    assert check_P1(F, W, L) and check_P2(F, W, L) and check_P3(F, W, L) and check_P4(F, W, L)


def test_p2_fails_for_small_m():
    F = field("gf64")
    W = Subspace.span(F, [1, 2])
    assert not check_P2(F, W)
