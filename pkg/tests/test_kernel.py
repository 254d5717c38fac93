import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfheap.catalog import QI, trig_coalgebra
from hopfheap.errors import BadPermutation, DimMismatch, FieldMismatch, ParseError, Singular, ZeroInverse
from hopfheap.kernel import (
    ONE,
    ZERO,
    FieldSpec,
    Scalar,
    SparseTensor,
    apply,
    compose,
    contract,
    einsum,
    format_scalar,
    kernel_basis,
    matrix_inverse,
    parse_scalar,
    permute_legs,
    rank,
    scalar_inv,
    tensor_product_t,
)

from conftest import I

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
qi_scalars = st.builds(lambda a, b: Scalar(a, b, -1), rationals, rationals)


def small_tensor(arity, n=2):
    idx = list(itertools.product(range(n), repeat=arity))
    return st.dictionaries(st.sampled_from(idx), st.integers(-3, 3), max_size=len(idx)).map(
        lambda d: SparseTensor((n,) * arity, d))


def test_scalar_inverse_examples():
    assert scalar_inv(Scalar(Fraction(2, 3))) == Scalar(Fraction(3, 2))
    assert scalar_inv(1 + I, QI) == Scalar(Fraction(1, 2), Fraction(-1, 2), -1)
    with pytest.raises(ZeroInverse):
        scalar_inv(ZERO)


def test_scalar_canonical_strings_roundtrip():
    for s in ["0", "1", "-3/4", "1*sqrt(-1)", "1/2-1/2*sqrt(-1)", "-2+3/5*sqrt(-1)"]:
        assert format_scalar(parse_scalar(s, QI)) == s


def test_parse_rejects_bad_tokens():
    for bad in ["1/0", "abc", "1+", "2*sqrt(3)"]:
        with pytest.raises((ParseError, FieldMismatch)):
            parse_scalar(bad, QI)


def test_field_spec_validation():
    assert str(FieldSpec.parse("Q")) == "Q"
    assert FieldSpec.parse("Q(sqrt:-1)") == QI
    for bad in ["Q(sqrt:4)", "Q(sqrt:12)"]:
        with pytest.raises(Exception):
            FieldSpec.parse(bad)


def test_mixed_radicands_rejected():
    with pytest.raises(FieldMismatch):
        Scalar(0, 1, -1) + Scalar(0, 1, 2)


@settings(max_examples=80, deadline=None)
@given(qi_scalars, qi_scalars, qi_scalars)
def test_field_axioms(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO
    if a:
        assert a * scalar_inv(a, QI) == ONE


def test_contract_examples():
    e0 = SparseTensor.vector([1, 0])
    assert contract(SparseTensor.identity(2), e0, [(1, 0)]) == e0
    C = trig_coalgebra()
    assert contract(C.comul, C.counit, [(2, 0)]) == SparseTensor.identity(2)
    t = SparseTensor.vector([1, 2])
    assert contract(t, e0, []) == tensor_product_t(t, e0)


def test_contract_dim_mismatch():
    with pytest.raises(DimMismatch):
        contract(SparseTensor.identity(2), SparseTensor.vector([1, 0, 0]), [(1, 0)])


def test_permute_examples():
    ut = SparseTensor((2, 2), {(0, 1): 1})
    assert permute_legs(ut, (1, 0)) == SparseTensor((2, 2), {(1, 0): 1})
    assert permute_legs(ut, (0, 1)) == ut
    assert permute_legs(permute_legs(ut, (1, 0)), (1, 0)) == ut
    with pytest.raises(BadPermutation):
        permute_legs(ut, (0, 0))


perms3 = st.permutations(range(3)).map(tuple)


@settings(max_examples=60, deadline=None)
@given(small_tensor(3), perms3, perms3)
def test_permute_composition(t, s, p):
    composed = tuple(s[p[i]] for i in range(3))
    assert permute_legs(t, composed) == permute_legs(permute_legs(t, p), s)


def test_tensor_product_examples():
    t = tensor_product_t(SparseTensor.vector([1, 0]), SparseTensor.vector([0, 1]))
    assert t == SparseTensor((2, 2), {(0, 1): 1})
    v = SparseTensor.vector([3, 4])
    assert tensor_product_t(SparseTensor.scalar(1), v) == v
    C = trig_coalgebra()
    assert tensor_product_t(C.comul, C.comul).arity == 6


@settings(max_examples=60, deadline=None)
@given(small_tensor(2), small_tensor(2), small_tensor(1), st.integers(-3, 3))
def test_contract_bilinear(a, b, v, k):
    lhs = contract(a + k * b, v, [(1, 0)])
    assert lhs == contract(a, v, [(1, 0)]) + k * contract(b, v, [(1, 0)])


def test_einsum_matches_compose():
    a = SparseTensor.matrix([[1, 2], [3, 4]])
    b = SparseTensor.matrix([[0, 1], [1, 1]])
    assert einsum("ij,jk->ik", a, b) == compose(a, b)
    assert apply(a, SparseTensor.vector([1, 1])) == SparseTensor.vector([3, 7])


def test_kernel_examples():
    assert len(kernel_basis(SparseTensor.zeros((2, 2)))) == 2
    assert kernel_basis(SparseTensor.matrix([[1, 0], [0, 0]])) == [SparseTensor.vector([0, 1])]


def test_inverse_examples():
    ident = SparseTensor.identity(2)
    assert matrix_inverse(ident) == ident
    d = SparseTensor.matrix([[-1, 0], [0, 1]])
    assert matrix_inverse(d) == d
    with pytest.raises(Singular):
        matrix_inverse(SparseTensor.matrix([[0, 0], [0, 1]]))


@settings(max_examples=60, deadline=None)
@given(small_tensor(2, 3))
def test_inverse_and_kernel_properties(m):
    basis = kernel_basis(m)
    assert len(basis) == 3 - rank(m)
    for v in basis:
        assert apply(m, v).is_zero()
    try:
        inv = matrix_inverse(m)
    except Singular:
        assert rank(m) < 3
    else:
        assert compose(m, inv) == SparseTensor.identity(3)
        assert compose(inv, m) == SparseTensor.identity(3)


@settings(max_examples=40, deadline=None)
@given(st.lists(qi_scalars, min_size=4, max_size=4))
def test_kernel_over_extension(entries):
    m = SparseTensor.matrix([entries[:2], entries[2:]])
    for v in kernel_basis(m):
        assert apply(m, v).is_zero()
