import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfheap.catalog import QI, cyclic_group_algebra, trig_rb_kill_u, trig_rb_negate_u
from hopfheap.errors import (
    AntipodeCommutationFails,
    CounitCondFails,
    FixedPointFails,
    ImageNotGroupLike,
    NotAutomorphism,
    NotCommutative,
    NotCommutativeAlgebra,
    NotSurjective,
)
from hopfheap.heap import heap_from_hopf
from hopfheap.hmodule import self_module
from hopfheap.kernel import Scalar, SparseTensor
from hopfheap.rota import (
    RBCooperator,
    RBHeap,
    RBHeapModule,
    basis_map_family,
    cobrace_from_rb,
    conjugate_rb,
    cooperator_from_rb_heap,
    descendent_heap,
    diagonal_family,
    epsilon_collapse,
    induced_rb_module,
    permutation_family,
    rb_heap_from_cooperator,
    rb_structure_iso,
    search_rb_operators,
    tensor_rb,
    translate_rb,
    verify_descendent_conjugation,
    verify_rb_cooperator,
    verify_rb_heap,
    verify_rb_heap_module,
)

from conftest import vec
from oracles import descendent_comul_naive

B_I = trig_rb_kill_u()
B_II = trig_rb_negate_u()
ID2 = SparseTensor.identity(2)


def test_trig_operators(trig):
    assert verify_rb_heap(trig, B_I).ok
    assert verify_rb_heap(trig, B_II).ok
    bad = SparseTensor.matrix([[0, 0], [1, 1]])
    check = verify_rb_heap(trig, bad).get("rb:bracket-multiplicative")
    assert not check.ok
    assert check.witness == {"args": ["u", "u", "u"], "lhs": "-1*θ", "rhs": "1*θ"}


def test_identity_operator_on_cocommutative_heaps(trig, hp_z2, z3):
    for hp in (trig, hp_z2, heap_from_hopf(z3)):
        assert verify_rb_heap(hp, SparseTensor.identity(hp.dim)).ok


def test_cooperator_examples(z2, sweedler):
    assert verify_rb_cooperator(z2, ID2).ok
    const_one = SparseTensor.matrix([[1, 1], [0, 0]])
    assert verify_rb_cooperator(z2, const_one).ok
    with pytest.raises(NotCommutativeAlgebra):
        verify_rb_cooperator(sweedler, SparseTensor.identity(4))


def test_rb_heap_from_cooperator(z2):
    for B in (ID2, SparseTensor.matrix([[1, 1], [0, 0]])):
        rb = rb_heap_from_cooperator(RBCooperator(z2, B))
        assert rb.report.ok
    z4 = cyclic_group_algebra(4, QI)
    swap_g = SparseTensor((4, 4), {(0, 0): 1, (3, 1): 1, (2, 2): 1, (3, 3): 1})
    with pytest.raises(AntipodeCommutationFails):
        rb_heap_from_cooperator(RBCooperator(z4, swap_g))


def test_cooperator_from_rb_heap(trig, hp_z2, x_plus, sweedler):
    assert cooperator_from_rb_heap(RBHeap(trig, ID2), x_plus).report.ok
    with pytest.raises(FixedPointFails):
        cooperator_from_rb_heap(RBHeap(trig, B_II), x_plus)
    assert cooperator_from_rb_heap(RBHeap(hp_z2, ID2), vec(1, 0)).report.ok
    with pytest.raises(NotCommutative):
        cooperator_from_rb_heap(RBHeap(heap_from_hopf(sweedler), SparseTensor.identity(4)),
                                vec(1, 0, 0, 0))


def test_conjugation(trig):
    assert conjugate_rb(RBHeap(trig, B_I), ID2).B == B_I
    assert conjugate_rb(RBHeap(trig, B_I), B_II).B == B_I
    with pytest.raises(NotAutomorphism):
        conjugate_rb(RBHeap(trig, B_I), B_I)


def test_translation(trig, x_plus, x_minus):
    rb = RBHeap(trig, ID2)
    assert translate_rb(rb, x_plus, x_plus).B == ID2
    assert translate_rb(rb, x_plus, x_minus).report.ok
    with pytest.raises(ImageNotGroupLike):
        translate_rb(RBHeap(trig, B_I), x_plus, x_plus)
    with pytest.raises(CounitCondFails):
        translate_rb(RBHeap(trig, 2 * ID2), x_plus, x_plus)


def test_tensor_operators(trig, hp_z2):
    assert tensor_rb(RBHeap(trig, B_II), RBHeap(hp_z2, ID2)).report.ok
    ident = tensor_rb(RBHeap(trig, ID2), RBHeap(trig, ID2))
    assert ident.report.ok and ident.B == SparseTensor.identity(4)
    assert tensor_rb(RBHeap(trig, B_I), RBHeap(trig, B_II)).report.ok


def test_descendent_examples(trig):
    for B in (B_II, ID2):
        desc = descendent_heap(RBHeap(trig, B))
        assert desc.heap.coalg.comul == trig.coalg.comul
        assert desc.heap.coalg.comul == descendent_comul_naive(trig.coalg, trig.chi, B)
        assert desc.report.ok
        for psi in (ID2, B_II):
            assert verify_descendent_conjugation(RBHeap(trig, B), psi).ok
    with pytest.raises(NotSurjective) as err:
        descendent_heap(RBHeap(trig, B_I))
    assert err.value.rank == 1


def test_descendent_on_z2(hp_z2):
    desc = descendent_heap(RBHeap(hp_z2, ID2))
    assert desc.report.ok
    assert desc.heap.coalg.comul == descendent_comul_naive(hp_z2.coalg, hp_z2.chi, ID2)


def test_cobrace(trig, x_plus):
    cb = cobrace_from_rb(RBHeap(trig, ID2), x_plus)
    assert cb.report.ok
    assert cb.report.passed("cobrace:compatibility")
    with pytest.raises(FixedPointFails):
        cobrace_from_rb(RBHeap(trig, B_II), x_plus)


def _self_rb_module(trig, T, B=B_II):
    return RBHeapModule(self_module(trig, "right"), T, RBHeap(trig, B))


def test_self_rb_module(trig):
    assert verify_rb_heap_module(_self_rb_module(trig, B_II)).ok
    # both sides of the identity are linear in T, so scaling T keeps it valid
    assert verify_rb_heap_module(_self_rb_module(trig, 2 * B_II)).ok
    assert not verify_rb_heap_module(_self_rb_module(trig, ID2)).ok


def test_induced_modules(trig):
    rb = RBHeap(trig, B_II)
    m = induced_rb_module(rb, epsilon_collapse(trig, 1))
    assert m.T == B_II and m.report.ok
    zero = induced_rb_module(rb, SparseTensor.zeros((2, 2, 2)))
    assert zero.T.is_zero() and zero.report.ok
    rng = random.Random(7)
    F = SparseTensor((2, 2, 2), {(a, b, c): Scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 4)),
                                                   Fraction(rng.randint(-3, 3)), -1)
                                 for a in range(2) for b in range(2) for c in range(2)})
    assert induced_rb_module(rb, F).report.ok


entries = st.integers(-4, 4)


@settings(max_examples=25, deadline=None)
@given(st.lists(entries, min_size=8, max_size=8), st.sampled_from(["B_i", "B_ii", "id"]))
def test_induced_module_for_any_F(trig, vals, which):
    B = {"B_i": B_I, "B_ii": B_II, "id": ID2}[which]
    F = SparseTensor((2, 2, 2), {(a, b, c): vals[4 * a + 2 * b + c]
                                 for a in range(2) for b in range(2) for c in range(2)})
    assert induced_rb_module(RBHeap(trig, B), F).report.ok


def test_rb_structure_iso(trig, x_plus, x_minus):
    for x in (x_plus, x_minus):
        res = rb_structure_iso(_self_rb_module(trig, B_II), x)
        assert res.report.ok
        for cid in ("rbstructure:image-in-coinvariants", "rbstructure:alpha-intertwines",
                    "rbstructure:beta-intertwines"):
            assert res.report.passed(cid)
    ident = rb_structure_iso(_self_rb_module(trig, ID2, ID2), x_plus)
    assert ident.report.ok
    # T = B = id gives the induced operator of the counit collapse
    assert ident.T_hat == induced_rb_module(RBHeap(trig, ID2), epsilon_collapse(trig, 1)).T


def test_search(trig, hp_z2):
    found = [r.B for r in search_rb_operators(trig, diagonal_family(2, 1))]
    for B in (B_I, B_II, ID2):
        assert B in found
    assert search_rb_operators(trig, []) == []
    z2_found = [r.B for r in search_rb_operators(hp_z2, basis_map_family(2))]
    assert z2_found == [SparseTensor.matrix([[1, 1], [0, 0]]), ID2]
    assert len(permutation_family(3)) == 6
