"""Builders for the standard small examples used by the corpus and the tests."""

from __future__ import annotations

from .coalg import Coalgebra
from .heap import HopfAlgebra, HopfHeap
from .kernel import FieldSpec, SparseTensor

QI = FieldSpec(-1)


def trig_coalgebra(field: FieldSpec = QI) -> Coalgebra:
    """Basis ``(u, θ)``: ``Δu = u⊗θ + θ⊗u``, ``Δθ = θ⊗θ - u⊗u``, ``ε = (0, 1)``."""
    comul = SparseTensor((2, 2, 2), {(0, 0, 1): 1, (0, 1, 0): 1, (1, 1, 1): 1, (1, 0, 0): -1})
    return Coalgebra(comul, SparseTensor.vector([0, 1]), ["u", "θ"], field, "trig2")


def trig_heap(field: FieldSpec = QI) -> HopfHeap:
    """``[u, u, u] = -u``, ``[θ, θ, θ] = θ`` and every other basis bracket zero."""
    chi = SparseTensor((2,) * 4, {(0, 0, 0, 0): -1, (1, 1, 1, 1): 1})
    return HopfHeap(trig_coalgebra(field), chi, "trig2")


def trig_rb_kill_u() -> SparseTensor:
    return SparseTensor.matrix([[0, 0], [0, 1]])


def trig_rb_negate_u() -> SparseTensor:
    return SparseTensor.matrix([[-1, 0], [0, 1]])


def _power_names(n: int) -> list[str]:
    return ["1", "g"] + [f"g{k}" for k in range(2, n)]


def cyclic_group_algebra(n: int, field: FieldSpec = QI) -> HopfAlgebra:
    """Group algebra of ``Z/n`` on the basis ``1, g, g2, ...``."""
    comul = SparseTensor((n, n, n), {(i, i, i): 1 for i in range(n)})
    coalg = Coalgebra(comul, SparseTensor.vector([1] * n), _power_names(n), field, f"Z{n}")
    mul = SparseTensor((n, n, n), {(i, j, (i + j) % n): 1 for i in range(n) for j in range(n)})
    antipode = SparseTensor((n, n), {((-i) % n, i): 1 for i in range(n)})
    return HopfAlgebra(coalg, mul, SparseTensor.basis_vector(n, 0), antipode, f"Z{n}")


def _sweedler_index(a: int, b: int) -> int:
    return a + 2 * b


def sweedler_algebra(field: FieldSpec = QI) -> HopfAlgebra:
    """Basis ``1, g, x, gx`` with ``g² = 1``, ``x² = 0``, ``xg = -gx``, ``Δx = x⊗1 + g⊗x``."""
    mul = {}
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                for d in (0, 1):
                    if b + d == 2:
                        continue
                    sign = -1 if b * c else 1
                    mul[(_sweedler_index(a, b), _sweedler_index(c, d),
                         _sweedler_index((a + c) % 2, b + d))] = sign
    comul = {
        (0, 0, 0): 1,
        (1, 1, 1): 1,
        (2, 2, 0): 1, (2, 1, 2): 1,
        (3, 3, 1): 1, (3, 0, 3): 1,
    }
    coalg = Coalgebra(SparseTensor((4, 4, 4), comul), SparseTensor.vector([1, 1, 0, 0]),
                      ["1", "g", "x", "gx"], field, "sweedler")
    antipode = SparseTensor((4, 4), {(0, 0): 1, (1, 1): 1, (3, 2): -1, (2, 3): 1})
    return HopfAlgebra(coalg, SparseTensor((4, 4, 4), mul), SparseTensor.basis_vector(4, 0),
                       antipode, "sweedler")


def idempotent_monoid_bialgebra(field: FieldSpec = QI):
    """Monoid algebra of ``{1, p}`` with ``p² = p``: returns ``(coalg, mul, unit)``."""
    comul = SparseTensor((2, 2, 2), {(0, 0, 0): 1, (1, 1, 1): 1})
    coalg = Coalgebra(comul, SparseTensor.vector([1, 1]), ["1", "p"], field, "monoid1p")
    mul = SparseTensor((2, 2, 2), {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 1): 1})
    return coalg, mul, SparseTensor.basis_vector(2, 0)
