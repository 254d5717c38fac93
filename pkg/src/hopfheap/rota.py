"""Rota-Baxter operators on Hopf heaps, co-operators, descendent heaps and Rota-Baxter modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .coalg import Coalgebra, as_vector, is_grouplike
from .errors import (
    AntipodeCommutationFails,
    ConstructionInvalid,
    CounitCondFails,
    DimMismatch,
    FixedPointFails,
    ImageNotGroupLike,
    NoAntipode,
    NotAlgebraMap,
    NotAutomorphism,
    NotCommutative,
    NotCommutativeAlgebra,
    NotGroupLike,
    NotSurjective,
    NotVerified,
    Singular,
)
from .heap import (
    HopfAlgebra,
    HopfHeap,
    find_antipode,
    heap_from_hopf,
    hopf_from_heap,
    is_commutative_heap,
    tensor_heap,
    translation_map,
    verify_heap_hom,
)
from .hmodule import HeapModule, _coordinate_matrix, free_heap_module, structure_iso
from .kernel import (
    Scalar,
    SparseTensor,
    compose,
    einsum,
    fuse_legs,
    kron,
    matrix_inverse,
    rank,
    split_leg,
)
from .report import VerificationReport, boolean_check, compare


class RBHeap:
    def __init__(self, heap: HopfHeap, B: SparseTensor, name: str | None = None):
        if B.dims != (heap.dim, heap.dim):
            raise DimMismatch(f"operator dims {B.dims} vs heap dim {heap.dim}")
        self.heap = heap
        self.B = B
        self.name = name or f"({heap.name}, B)"

    @cached_property
    def report(self) -> VerificationReport:
        return verify_rb_heap(self.heap, self.B)


class RBCooperator:
    def __init__(self, hopf: HopfAlgebra, B: SparseTensor, name: str | None = None):
        if B.dims != (hopf.dim, hopf.dim):
            raise DimMismatch(f"operator dims {B.dims} vs algebra dim {hopf.dim}")
        self.hopf = hopf
        self.B = B
        self.name = name or f"({hopf.name}, B)"

    @cached_property
    def report(self) -> VerificationReport:
        return verify_rb_cooperator(self.hopf, self.B)


class RBHeapModule:
    """A right heap module with an operator ``T`` over a Rota-Baxter heap."""

    def __init__(self, module: HeapModule, T: SparseTensor, rb: RBHeap, name: str | None = None):
        if module.side != "right":
            raise ValueError("Rota-Baxter heap modules are right modules")
        if T.dims != (module.dim, module.dim):
            raise DimMismatch(f"operator dims {T.dims} vs module dim {module.dim}")
        if module.parent.dim != rb.heap.dim:
            raise DimMismatch("module parent and Rota-Baxter heap differ in dimension")
        self.module = module
        self.T = T
        self.rb = rb
        self.name = name or f"({module.name}, T)"

    @cached_property
    def report(self) -> VerificationReport:
        return verify_rb_heap_module(self)


def verify_rb_heap(hp: HopfHeap, B: SparseTensor) -> VerificationReport:
    if B.dims != (hp.dim, hp.dim):
        raise DimMismatch(f"operator dims {B.dims} vs heap dim {hp.dim}")
    X, C = hp.chi, hp.coalg
    rep = VerificationReport(f"rota-baxter heap {hp.name}")
    rep.add(compare(
        "rb:bracket-multiplicative",
        einsum("abcp,lp->abcl", X, B),
        einsum("ia,jb,kc,ijkl->abcl", B, B, B, X),
        3, C.names(4),
    ))
    rep.add(compare(
        "rb:twisted-comultiplication",
        einsum("ajk,xj,yk->axy", C.comul, B, B),
        einsum("ba,bpqys,ts,wq,ptwx->axy", B, C.comul4, B, B, X),
        1, C.names(3),
    ))
    return rep


def _is_algebra_map(H: HopfAlgebra, B: SparseTensor) -> bool:
    mul_ok = einsum("abp,lp->abl", H.mul, B) == einsum("ia,jb,ijl->abl", B, B, H.mul)
    return mul_ok and einsum("la,a->l", B, H.unit) == H.unit


def verify_rb_cooperator(H: HopfAlgebra, B: SparseTensor) -> VerificationReport:
    if not H.is_commutative():
        raise NotCommutativeAlgebra(f"{H.name} is not commutative")
    if not _is_algebra_map(H, B):
        raise NotAlgebraMap("the operator is not an algebra map")
    C = H.coalg
    rep = VerificationReport(f"rota-baxter co-operator {H.name}")
    rep.add(compare(
        "rb:cooperator-identity",
        einsum("ajk,xj,yk->axy", C.comul, B, B),
        einsum("ba,bpqys,ts,qtw,vw,pvx->axy", B, C.comul4, H.antipode, H.mul, B, H.mul),
        1, C.names(3),
    ))
    return rep


def _check(obj, what: str):
    if not obj.report.ok:
        raise ConstructionInvalid(f"constructed {what} fails verification", obj.report)
    return obj


def rb_heap_from_cooperator(co: RBCooperator) -> RBHeap:
    H, B = co.hopf, co.B
    if compose(H.antipode, B) != compose(B, H.antipode):
        raise AntipodeCommutationFails("S∘B differs from B∘S")
    if not co.report.ok:
        raise NotVerified(f"{co.name} fails the co-operator identity", co.report)
    return _check(RBHeap(heap_from_hopf(H), B, f"Hp{co.name}"), "Rota-Baxter heap")


def cooperator_from_rb_heap(rb: RBHeap, x) -> RBCooperator:
    hp = rb.heap
    if not is_commutative_heap(hp):
        raise NotCommutative(f"{hp.name} is not a commutative heap")
    x = as_vector(x, hp.dim)
    bx = einsum("la,a->l", rb.B, x)
    if bx != x:
        raise FixedPointFails(f"B(x) = {[str(c) for c in bx.to_list()]} differs from x")
    return _check(RBCooperator(hopf_from_heap(hp, x), rb.B, f"H_x{rb.name}"), "co-operator")


def conjugate_rb(rb: RBHeap, psi: SparseTensor) -> RBHeap:
    """The operator ``ψ∘B∘ψ⁻¹`` for a heap automorphism ``ψ``."""
    hp = rb.heap
    try:
        inv = matrix_inverse(psi)
    except Singular as exc:
        raise NotAutomorphism(f"psi is not invertible: {exc}") from exc
    rep = verify_heap_hom(psi, hp, hp)
    if not rep.ok:
        raise NotAutomorphism(f"psi is not a heap endomorphism: {rep.failures()[0].check_id}")
    return _check(RBHeap(hp, compose(compose(psi, rb.B), inv), f"{rb.name}^psi"), "Rota-Baxter heap")


def _require_counit_preserved(hp: HopfHeap, B: SparseTensor):
    if einsum("pa,p->a", B, hp.coalg.counit) != hp.coalg.counit:
        raise CounitCondFails("ε∘B differs from ε")


def translate_rb(rb: RBHeap, x, y) -> RBHeap:
    """The operator ``c -> [B(c), x, y]``."""
    hp = rb.heap
    if not is_commutative_heap(hp):
        raise NotCommutative(f"{hp.name} is not a commutative heap")
    x, y = as_vector(x, hp.dim), as_vector(y, hp.dim)
    for v in (x, y):
        if not is_grouplike(hp.coalg, v):
            raise NotGroupLike("translation elements must be group-like")
    _require_counit_preserved(hp, rb.B)
    if not is_grouplike(hp.coalg, einsum("la,a->l", rb.B, x)):
        raise ImageNotGroupLike("B(x) is not group-like")
    B = compose(translation_map(hp, x, y, "right"), rb.B)
    return _check(RBHeap(hp, B, f"tau∘{rb.name}"), "Rota-Baxter heap")


def tensor_rb(rb1: RBHeap, rb2: RBHeap) -> RBHeap:
    hp = tensor_heap(rb1.heap, rb2.heap)
    return _check(RBHeap(hp, kron(rb1.B, rb2.B), f"{rb1.name}⊗{rb2.name}"), "Rota-Baxter heap")


def descendent_comul(hp: HopfHeap, B: SparseTensor) -> SparseTensor:
    """``a -> [a_1, B(a_4), B(a_2)] ⊗ a_3``."""
    return einsum("apqrs,ts,wq,ptwx->axr", hp.coalg.comul4, B, B, hp.chi)


@dataclass
class DescendentHeap:
    heap: HopfHeap
    source: RBHeap
    report: VerificationReport


def descendent_heap(rb: RBHeap) -> DescendentHeap:
    """The heap with the original bracket and the deformed comultiplication.

    The returned report certifies ``Δ'∘B = (B⊗B)∘Δ`` and that ``B`` is both a
    heap map into the descendent and a Rota-Baxter operator on it.
    """
    hp, B = rb.heap, rb.B
    hp.require_verified()
    if not is_commutative_heap(hp):
        raise NotCommutative(f"{hp.name} is not a commutative heap")
    r = rank(B)
    if r < hp.dim:
        raise NotSurjective(f"B has rank {r} < {hp.dim}", rank=r)
    _require_counit_preserved(hp, B)
    C = hp.coalg
    comul = descendent_comul(hp, B)
    coalg = Coalgebra(comul, C.counit, C.basis, C.field, f"{C.name}_B")
    desc = HopfHeap(coalg, hp.chi, f"{hp.name}_B")
    _check(desc, "descendent heap")
    rep = VerificationReport(f"descendent {desc.name}")
    rep.add(compare(
        "descendent:intertwines",
        einsum("pa,pxy->axy", B, comul),
        einsum("ajk,xj,yk->axy", C.comul, B, B),
        1, C.names(3),
    ))
    rep.extend(verify_heap_hom(B, hp, desc), "B-hom")
    rep.extend(verify_rb_heap(desc, B), "B-on-descendent")
    return DescendentHeap(desc, rb, rep)


def verify_descendent_conjugation(rb: RBHeap, psi: SparseTensor) -> VerificationReport:
    """``(ψ⊗ψ)∘Δ'_B = Δ'_{ψBψ⁻¹}∘ψ``."""
    conj = conjugate_rb(rb, psi)
    d1 = descendent_comul(rb.heap, rb.B)
    d2 = descendent_comul(rb.heap, conj.B)
    rep = VerificationReport(f"descendent conjugation {rb.name}")
    rep.add(compare(
        "descendent:conjugation",
        einsum("ajk,xj,yk->axy", d1, psi, psi),
        einsum("pa,pxy->axy", psi, d2),
        1, rb.heap.coalg.names(3),
    ))
    return rep


@dataclass
class CoBrace:
    hopf: HopfAlgebra
    hopf_descendent: HopfAlgebra
    report: VerificationReport


def cobrace_from_rb(rb: RBHeap, x) -> CoBrace:
    """Certify ``H_x`` with both comultiplications as a co-brace.

    The checks are: ``H_x`` is a Hopf algebra, the same product with the
    descendent comultiplication is a Hopf algebra (antipode solved for), and
    ``h_11' S(h_2) h_31' ⊗ h_12' ⊗ h_32' = h_1' ⊗ h_2'1 ⊗ h_2'2``.
    """
    desc = descendent_heap(rb)
    hp = rb.heap
    x = as_vector(x, hp.dim)
    if einsum("la,a->l", rb.B, x) != x:
        raise FixedPointFails("B(x) differs from x")
    H = hopf_from_heap(hp, x)
    C2 = desc.heap.coalg
    s2 = find_antipode(C2, H.mul, x)
    if s2 is None:
        raise NoAntipode("no antipode for the descendent comultiplication")
    H2 = HopfAlgebra(C2, H.mul, x, s2, f"{H.name}'")
    D, D2, M = hp.coalg.comul, C2.comul, H.mul
    rep = VerificationReport(f"co-brace {H.name}")
    rep.extend(H.report, "hopf")
    rep.extend(H2.report, "hopf-descendent")
    rep.add(compare(
        "cobrace:compatibility",
        einsum("hijk,ipq,krs,tj,ptw,wrx->hxqs", hp.coalg.comul3, D2, D2, H.antipode, M, M),
        einsum("hxm,myz->hxyz", D2, D),
        1, hp.coalg.names(4),
    ))
    return CoBrace(H, H2, rep)


def verify_rb_heap_module(M: RBHeapModule) -> VerificationReport:
    mod, T, B = M.module, M.T, M.rb.B
    R, A = mod.coaction, mod.action
    D3 = mod.parent.coalg.comul3
    rep = VerificationReport(f"rota-baxter module {M.name}")
    rep.add(compare(
        "rbmodule:identity",
        einsum("msh,xs,yh->mxy", R, T, B),
        einsum("tm,tuv,vpyr,ir,jp,uijx->mxy", T, R, D3, B, B, A),
        1, [mod.basis, mod.basis, mod.parent.basis],
    ))
    return rep


def induced_rb_module(rb: RBHeap, F: SparseTensor) -> RBHeapModule:
    """Free right module ``M⊗H`` with ``T(m⊗h) = F(m⊗h_1) ⊗ B(h_2)``.

    ``F[m, h, out]`` is a linear map ``M⊗H -> M``.
    """
    hp = rb.heap
    if F.arity != 3 or F.dims[1] != hp.dim or F.dims[0] != F.dims[2]:
        raise DimMismatch(f"F dims {F.dims} do not describe a map M⊗H -> M")
    mod = free_heap_module(hp, F.dims[0], "right")
    T = fuse_legs(einsum("hpq,mpo,bq->obmh", hp.coalg.comul, F, rb.B), [(0, 1), (2, 3)])
    return RBHeapModule(mod, T, rb, f"induced({rb.name})")


def epsilon_collapse(hp: HopfHeap, dim_m: int) -> SparseTensor:
    """``F(m⊗h) = ε(h) m``."""
    return einsum("mo,h->mho", SparseTensor.identity(dim_m), hp.coalg.counit)


@dataclass
class RBStructureIso:
    alpha: SparseTensor
    beta: SparseTensor
    T_hat: SparseTensor
    module: RBHeapModule
    report: VerificationReport


def rb_structure_iso(M: RBHeapModule, x) -> RBStructureIso:
    """Transport ``T`` to the free module ``K⊗H`` on the coinvariants ``K``.

    ``T_hat(m⊗h) = P(T(m◁(x⊗h_1))) ⊗ B(h_2)`` with ``P`` the projection onto
    ``K``.  The report certifies that ``P∘T∘alpha`` lands in ``K``, that
    ``alpha`` and ``beta`` intertwine ``T_hat`` with ``T``, and that the
    transported operator satisfies the module identity.
    """
    hp, B, T = M.rb.heap, M.rb.B, M.T
    if not is_commutative_heap(hp):
        raise NotCommutative(f"{hp.name} is not a commutative heap")
    _require_counit_preserved(hp, B)
    x = as_vector(x, hp.dim)
    if not is_grouplike(hp.coalg, x):
        raise NotGroupLike("the chosen element is not group-like")
    mod = M.module
    iso = structure_iso(mod, x)
    K = iso.coinvariants
    k, n = K.dim, hp.dim
    image = compose(iso.projection, compose(T, iso.alpha))
    rep = VerificationReport(f"rota-baxter structure {M.name}")
    in_k = einsum("oc,opq->cpq", image, mod.coaction) == einsum("pc,q->cpq", image, x)
    rep.add(boolean_check("rbstructure:image-in-coinvariants", in_k,
                          "the projected image is not coinvariant"))
    if not in_k:
        return RBStructureIso(iso.alpha, iso.beta, SparseTensor.zeros((k * n, k * n)), M, rep)
    coords = split_leg(_coordinate_matrix(K, image, k * n), 1, (k, n))
    t_hat = fuse_legs(einsum("hpq,ajp,bq->abjh", hp.coalg.comul, coords, B), [(0, 1), (2, 3)])
    rep.add(compare("rbstructure:alpha-intertwines",
                    compose(iso.alpha, t_hat), compose(T, iso.alpha), 1))
    rep.add(compare("rbstructure:beta-intertwines",
                    compose(t_hat, iso.beta), compose(iso.beta, T), 1))
    target = RBHeapModule(free_heap_module(hp, k, "right"), t_hat, M.rb, f"free({M.name})")
    rep.extend(target.report, "transported")
    return RBStructureIso(iso.alpha, iso.beta, t_hat, target, rep)


def search_rb_operators(hp: HopfHeap, family) -> list[RBHeap]:
    """Candidates from ``family`` that satisfy both operator identities, in input order."""
    return [RBHeap(hp, B) for B in family if verify_rb_heap(hp, B).ok]


def height_values(height: int) -> list[Scalar]:
    """Rationals ``p/q`` with ``|p|, q <= height``, sorted."""
    vals = {Fraction(p, q) for q in range(1, height + 1) for p in range(-height, height + 1)}
    return [Scalar(v) for v in sorted(vals)]


def diagonal_family(n: int, height: int = 1) -> list[SparseTensor]:
    vals = height_values(height)
    return [SparseTensor((n, n), {(i, i): v for i, v in enumerate(diag)})
            for diag in itertools.product(vals, repeat=n)]


def permutation_family(n: int) -> list[SparseTensor]:
    return [SparseTensor((n, n), {(p, i): 1 for i, p in enumerate(perm)})
            for perm in itertools.permutations(range(n))]


def basis_map_family(n: int) -> list[SparseTensor]:
    """Maps sending basis vectors to basis vectors and fixing the first one."""
    return [SparseTensor((n, n), {(0, 0): 1, **{(t, i + 1): 1 for i, t in enumerate(targets)}})
            for targets in itertools.product(range(n), repeat=n - 1)]
