"""Hopf heaps, Hopf algebras and the conversions between them."""

from __future__ import annotations

import itertools
import random
from functools import cached_property

from .coalg import Coalgebra, as_vector, counit_of, is_cocommutative, is_grouplike, tensor_coalgebra
from .errors import (
    ConstructionInvalid,
    CounitNotOne,
    DimMismatch,
    FieldMismatch,
    NotCocommutative,
    NotGroupLike,
    NotVerified,
)
from .kernel import ONE, SparseTensor, compose, einsum, fuse_legs, solve
from .report import VerificationReport, boolean_check, compare


class HopfHeap:
    """A coalgebra with a bracket ``[e_i, e_j, e_k] = sum X[i, j, k, l] e_l``."""

    def __init__(self, coalg: Coalgebra, chi: SparseTensor, name: str | None = None):
        n = coalg.dim
        if chi.dims != (n, n, n, n):
            raise DimMismatch(f"bracket dims {chi.dims} do not match coalgebra dim {n}")
        self.coalg = coalg
        self.chi = chi
        self.name = name or coalg.name

    @property
    def dim(self) -> int:
        return self.coalg.dim

    @property
    def field(self):
        return self.coalg.field

    @property
    def basis(self) -> list[str]:
        return self.coalg.basis

    @cached_property
    def report(self) -> VerificationReport:
        return verify_hopf_heap(self)

    def require_verified(self) -> HopfHeap:
        if not self.report.ok:
            raise NotVerified(f"heap {self.name} fails its axioms", self.report)
        return self

    def bracket(self, a, b, c) -> SparseTensor:
        n = self.dim
        return einsum("i,j,k,ijkl->l", as_vector(a, n), as_vector(b, n), as_vector(c, n), self.chi)

    def __repr__(self) -> str:
        return f"HopfHeap({self.name!r}, dim={self.dim}, field={self.field})"


class HopfAlgebra:
    """Multiplication ``e_i e_j = sum M[i, j, k] e_k``, unit vector, antipode matrix."""

    def __init__(self, coalg: Coalgebra, mul: SparseTensor, unit, antipode: SparseTensor,
                 name: str | None = None):
        n = coalg.dim
        unit = as_vector(unit, n)
        if mul.dims != (n, n, n) or antipode.dims != (n, n):
            raise DimMismatch(f"algebra data {mul.dims}, {antipode.dims} vs dim {n}")
        self.coalg = coalg
        self.mul = mul
        self.unit = unit
        self.antipode = antipode
        self.name = name or coalg.name

    @property
    def dim(self) -> int:
        return self.coalg.dim

    @property
    def field(self):
        return self.coalg.field

    @property
    def basis(self) -> list[str]:
        return self.coalg.basis

    @cached_property
    def report(self) -> VerificationReport:
        return verify_hopf_algebra(self)

    def require_verified(self) -> HopfAlgebra:
        if not self.report.ok:
            raise NotVerified(f"Hopf algebra {self.name} fails its axioms", self.report)
        return self

    def product(self, a, b) -> SparseTensor:
        n = self.dim
        return einsum("i,j,ijk->k", as_vector(a, n), as_vector(b, n), self.mul)

    def is_commutative(self) -> bool:
        return self.mul == einsum("abk->bak", self.mul)

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name!r}, dim={self.dim}, field={self.field})"


def verify_hopf_heap(hp: HopfHeap) -> VerificationReport:
    C, X = hp.coalg, hp.chi
    D, e = C.comul, C.counit
    n = hp.dim
    ident = SparseTensor.identity(n)
    rep = VerificationReport(f"hopf heap {hp.name}")
    rep.extend(C.report)
    rep.add(compare(
        "heap:associativity",
        einsum("abcp,pdhl->abcdhl", X, X),
        einsum("cdhp,abpl->abcdhl", X, X),
        5, C.names(6),
    ))
    # arguments are (c, a); slots show the bracket as written
    rep.add(compare(
        "heap:malcev-left",
        einsum("cpq,pqal->cal", D, X),
        einsum("c,al->cal", e, ident),
        2, C.names(3), slots=(0, 0, 1),
    ))
    rep.add(compare(
        "heap:malcev-right",
        einsum("cpq,apql->cal", D, X),
        einsum("c,al->cal", e, ident),
        2, C.names(3), slots=(1, 0, 0),
    ))
    rep.add(compare(
        "heap:comultiplicative",
        einsum("abcp,pxy->abcxy", X, D),
        einsum("ajk,bmn,cpq,jnpx,kmqy->abcxy", D, D, D, X, X),
        3, C.names(5),
    ))
    rep.add(compare(
        "heap:counit-multiplicative",
        einsum("abcp,p->abc", X, e),
        einsum("a,b,c->abc", e, e, e),
        3, C.names(3),
    ))
    return rep


def is_commutative_heap(hp: HopfHeap) -> bool:
    return hp.chi == einsum("abcl->cbal", hp.chi)


def verify_hopf_algebra(H: HopfAlgebra) -> VerificationReport:
    C, M, S, one = H.coalg, H.mul, H.antipode, H.unit
    D, e = C.comul, C.counit
    ident = SparseTensor.identity(H.dim)
    rep = VerificationReport(f"hopf algebra {H.name}")
    rep.extend(C.report)
    rep.add(compare(
        "algebra:associativity",
        einsum("abp,pcl->abcl", M, M),
        einsum("bcp,apl->abcl", M, M),
        3, C.names(4),
    ))
    rep.add(compare("algebra:unit-left", einsum("u,ual->al", one, M), ident, 1, C.names(2)))
    rep.add(compare("algebra:unit-right", einsum("u,aul->al", one, M), ident, 1, C.names(2)))
    rep.add(compare(
        "bialgebra:comultiplicative",
        einsum("abp,pxy->abxy", M, D),
        einsum("ajk,bmn,jmx,kny->abxy", D, D, M, M),
        2, C.names(4),
    ))
    rep.add(compare(
        "bialgebra:counit-multiplicative",
        einsum("abp,p->ab", M, e),
        einsum("a,b->ab", e, e),
        2, C.names(2),
    ))
    rep.add(boolean_check("bialgebra:unit-grouplike", is_grouplike(C, one),
                          "the unit is not group-like"))
    eta_eps = einsum("a,l->al", e, one)
    rep.add(compare("antipode:left", einsum("ajk,sj,skl->al", D, S, M), eta_eps, 1, C.names(2)))
    rep.add(compare("antipode:right", einsum("ajk,sk,jsl->al", D, S, M), eta_eps, 1, C.names(2)))
    return rep


def _verified_or_raise(obj, what: str):
    if not obj.report.ok:
        raise ConstructionInvalid(f"constructed {what} fails verification", obj.report)
    return obj


def heap_from_hopf(H: HopfAlgebra) -> HopfHeap:
    """The bracket ``[a, b, c] = a S(b) c``."""
    H.require_verified()
    chi = einsum("sb,asp,pcl->abcl", H.antipode, H.mul, H.mul)
    return _verified_or_raise(HopfHeap(H.coalg, chi, f"Hp({H.name})"), "heap")


def hopf_from_heap(hp: HopfHeap, x) -> HopfAlgebra:
    """Product ``[a, x, b]``, antipode ``[x, a, x]`` and unit ``x``."""
    hp.require_verified()
    x = as_vector(x, hp.dim)
    if not is_grouplike(hp.coalg, x):
        raise NotGroupLike(f"{list(map(str, x.to_list()))} is not group-like in {hp.name}")
    mul = einsum("s,asbl->abl", x, hp.chi)
    antipode = einsum("p,q,paql->la", x, x, hp.chi)
    H = HopfAlgebra(hp.coalg, mul, x, antipode, f"H_x({hp.name})")
    return _verified_or_raise(H, "Hopf algebra")


def find_antipode(coalg: Coalgebra, mul: SparseTensor, unit) -> SparseTensor | None:
    """Solve both convolution identities for ``S`` as one linear system.

    The unknowns are the ``n*n`` entries of ``S``; a solution, if any, is the
    antipode (it is unique whenever it exists).
    """
    n = coalg.dim
    D, e = coalg.comul, coalg.counit
    unit = as_vector(unit, n)
    left = fuse_legs(einsum("ajk,skl->alsj", D, mul), [(0, 1), (2, 3)])
    right = fuse_legs(einsum("ajk,jsl->alsk", D, mul), [(0, 1), (2, 3)])
    target = fuse_legs(einsum("a,l->al", e, unit), [(0, 1)]).to_list()
    rows = left.to_list() + right.to_list()
    x = solve(rows, target + target, n * n)
    if x is None:
        return None
    return SparseTensor((n, n), {(s, j): x[s * n + j] for s in range(n) for j in range(n)})


def grunspan_map(hp: HopfHeap, f) -> SparseTensor:
    """``c -> [c_1, [f_1, c_3, c_2], f_2]`` for a vector ``f`` with counit one."""
    f = as_vector(f, hp.dim)
    if counit_of(hp.coalg, f) != ONE:
        raise CounitNotOne(f"counit of f is {counit_of(hp.coalg, f)}, not 1")
    ff = einsum("f,fxy->xy", f, hp.coalg.comul)
    return einsum("cpqr,xy,xrqm,pmyl->lc", hp.coalg.comul3, ff, hp.chi, hp.chi)


def translation_map(hp: HopfHeap, a, b, side: str = "right") -> SparseTensor:
    """Right translation ``c -> [c, a, b]`` or left translation ``c -> [a, b, c]``."""
    n = hp.dim
    a, b = as_vector(a, n), as_vector(b, n)
    if side == "right":
        return einsum("cijl,i,j->lc", hp.chi, a, b)
    if side == "left":
        return einsum("ijcl,i,j->lc", hp.chi, a, b)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def verify_heap_hom(f: SparseTensor, hp1: HopfHeap, hp2: HopfHeap) -> VerificationReport:
    if f.dims != (hp2.dim, hp1.dim):
        raise DimMismatch(f"map dims {f.dims} vs heaps {hp2.dim}x{hp1.dim}")
    rep = VerificationReport(f"heap hom {hp1.name} -> {hp2.name}")
    _coalgebra_map_checks(rep, f, hp1.coalg, hp2.coalg)
    rep.add(compare(
        "hom:bracket",
        einsum("abcp,lp->abcl", hp1.chi, f),
        einsum("ia,jb,kc,ijkl->abcl", f, f, f, hp2.chi),
        3, [hp1.basis] * 3 + [hp2.basis],
    ))
    return rep


def _coalgebra_map_checks(rep: VerificationReport, f: SparseTensor, C1: Coalgebra, C2: Coalgebra):
    rep.add(compare(
        "hom:comultiplication",
        einsum("ajk,xj,yk->axy", C1.comul, f, f),
        einsum("pa,pxy->axy", f, C2.comul),
        1, [C1.basis, C2.basis, C2.basis],
    ))
    rep.add(compare("hom:counit", einsum("pa,p->a", f, C2.counit), C1.counit, 1, [C1.basis]))


def verify_hopf_algebra_hom(f: SparseTensor, H1: HopfAlgebra, H2: HopfAlgebra) -> VerificationReport:
    if f.dims != (H2.dim, H1.dim):
        raise DimMismatch(f"map dims {f.dims} vs algebras {H2.dim}x{H1.dim}")
    rep = VerificationReport(f"Hopf algebra hom {H1.name} -> {H2.name}")
    _coalgebra_map_checks(rep, f, H1.coalg, H2.coalg)
    rep.add(compare(
        "hom:multiplication",
        einsum("abp,lp->abl", H1.mul, f),
        einsum("ia,jb,ijl->abl", f, f, H2.mul),
        2, [H1.basis, H1.basis, H2.basis],
    ))
    rep.add(boolean_check("hom:unit", einsum("la,a->l", f, H1.unit) == H2.unit,
                          "the unit is not preserved"))
    return rep


def tensor_heap(hp1: HopfHeap, hp2: HopfHeap) -> HopfHeap:
    if hp1.field != hp2.field:
        raise FieldMismatch(f"{hp1.field} vs {hp2.field}")
    coalg = tensor_coalgebra(hp1.coalg, hp2.coalg)
    chi = fuse_legs(einsum("abcl,pqrs->apbqcrls", hp1.chi, hp2.chi), [(0, 1), (2, 3), (4, 5), (6, 7)])
    return HopfHeap(coalg, chi, f"{hp1.name}⊗{hp2.name}")


def opposite_heap(hp: HopfHeap) -> HopfHeap:
    """``[a, b, c]^op = [c, b, a]``; only defined for cocommutative heaps."""
    if not is_cocommutative(hp.coalg):
        raise NotCocommutative(f"{hp.name} is not cocommutative")
    return HopfHeap(hp.coalg, einsum("abcl->cbal", hp.chi), f"{hp.name}^op")


def verify_middle_associativity(hp: HopfHeap) -> VerificationReport:
    rep = VerificationReport(f"middle associativity {hp.name}")
    X = hp.chi
    rep.add(compare(
        "heap:middle-associativity",
        einsum("abcp,pdhl->abcdhl", X, X),
        einsum("bcdp,aphl->abcdhl", X, X),
        5, hp.coalg.names(6),
    ))
    return rep


def verify_grunspan_identity(hp: HopfHeap, f) -> VerificationReport:
    """``[[a, b, g(c)], d, h] = [a, [d, c, b], h]`` for the Grunspan map ``g``."""
    X = hp.chi
    theta = grunspan_map(hp, f)
    rep = VerificationReport(f"grunspan identity {hp.name}")
    rep.add(compare(
        "grunspan:defining-identity",
        einsum("tc,abtp,pdhl->abcdhl", theta, X, X),
        einsum("dcbp,aphl->abcdhl", X, X),
        5, hp.coalg.names(6),
    ))
    return rep


EXCHANGE_FULL_MAX_DIM = 3


def verify_exchange_identity(hp: HopfHeap, samples: int = 300, seed: int = 0) -> VerificationReport:
    """The nine-argument exchange identity of commutative heaps.

    Checked on every basis tuple up to ``EXCHANGE_FULL_MAX_DIM``; above that
    on ``samples`` seeded random basis tuples (the identity is multilinear).
    """
    X = hp.chi
    rep = VerificationReport(f"exchange identity {hp.name}")
    if hp.dim <= EXCHANGE_FULL_MAX_DIM:
        lhs = einsum("abcp,defq,ghir,pqrl->abcdefghil", X, X, X, X)
        rhs = einsum("adgp,behq,cfir,pqrl->abcdefghil", X, X, X, X)
        rep.add(compare("heap:exchange", lhs, rhs, 9, hp.coalg.names(10)))
        return rep
    rng = random.Random(seed)
    n = hp.dim
    basis = [SparseTensor.basis_vector(n, i) for i in range(n)]
    br = hp.bracket
    for _ in range(samples):
        w = [basis[rng.randrange(n)] for _ in range(9)]
        lhs = br(br(*w[0:3]), br(*w[3:6]), br(*w[6:9]))
        rhs = br(br(w[0], w[3], w[6]), br(w[1], w[4], w[7]), br(w[2], w[5], w[8]))
        if lhs != rhs:
            rep.add(boolean_check("heap:exchange", False, "sampled basis tuple fails"))
            return rep
    rep.add(boolean_check("heap:exchange", True))
    return rep


def verify_translation_laws(hp: HopfHeap) -> VerificationReport:
    """Composition laws of right and left translations on all basis choices."""
    n = hp.dim
    basis = [SparseTensor.basis_vector(n, i) for i in range(n)]
    right_ok, left_ok = True, True
    right_bad = left_bad = None
    for a, b, c, d in itertools.product(range(n), repeat=4):
        A, B, Cv, Dv = basis[a], basis[b], basis[c], basis[d]
        lhs = compose(translation_map(hp, Cv, Dv, "right"), translation_map(hp, A, B, "right"))
        rhs = translation_map(hp, A, hp.bracket(B, Cv, Dv), "right")
        if right_ok and lhs != rhs:
            right_ok, right_bad = False, (a, b, c, d)
        lhs = compose(translation_map(hp, A, B, "left"), translation_map(hp, Cv, Dv, "left"))
        rhs = translation_map(hp, hp.bracket(A, B, Cv), Dv, "left")
        if left_ok and lhs != rhs:
            left_ok, left_bad = False, (a, b, c, d)
    names = hp.basis
    rep = VerificationReport(f"translation laws {hp.name}")
    rep.add(boolean_check("translation:right-composition", right_ok,
                          right_bad and "fails at " + ",".join(names[i] for i in right_bad)))
    rep.add(boolean_check("translation:left-composition", left_ok,
                          left_bad and "fails at " + ",".join(names[i] for i in left_bad)))
    return rep
