"""Hopf trusses (heap and cocycle forms), Hopf braces and the truss constructions."""

from __future__ import annotations

from functools import cached_property

from .coalg import as_vector, is_cocommutative, is_grouplike
from .errors import (
    ConstructionInvalid,
    DimMismatch,
    NoAntipode,
    NoCircUnit,
    NotCocommutative,
    NotCommutative,
    NotGroupLike,
    NotHeapEndo,
    NotIdempotent,
    NotVerified,
)
from .heap import (
    HopfAlgebra,
    HopfHeap,
    find_antipode,
    heap_from_hopf,
    hopf_from_heap,
    is_commutative_heap,
    verify_heap_hom,
)
from .kernel import SparseTensor, compose, einsum, fuse_legs
from .kernel.linalg import solve_with_nullity
from .report import VerificationReport, compare


class HopfTruss:
    """A Hopf heap with a second product ``a∘b = sum circ[a, b, l] e_l``."""

    def __init__(self, heap: HopfHeap, circ: SparseTensor, name: str | None = None):
        n = heap.dim
        if circ.dims != (n, n, n):
            raise DimMismatch(f"product dims {circ.dims} vs dim {n}")
        self.heap = heap
        self.circ = circ
        self.name = name or f"truss({heap.name})"

    @property
    def dim(self) -> int:
        return self.heap.dim

    @cached_property
    def report(self) -> VerificationReport:
        return verify_hopf_truss(self)


class CocycleTruss:
    """A Hopf algebra ``(H, ·)`` with a product ``∘`` and a cocycle map ``sigma``."""

    def __init__(self, hopf: HopfAlgebra, circ: SparseTensor, sigma: SparseTensor,
                 name: str | None = None):
        n = hopf.dim
        if circ.dims != (n, n, n) or sigma.dims != (n, n):
            raise DimMismatch(f"truss data {circ.dims}, {sigma.dims} vs dim {n}")
        self.hopf = hopf
        self.circ = circ
        self.sigma = sigma
        self.name = name or f"cocycle-truss({hopf.name})"

    @property
    def dim(self) -> int:
        return self.hopf.dim

    @cached_property
    def report(self) -> VerificationReport:
        return verify_truss_cocycle_form(self)


class HopfBrace:
    """Two Hopf algebra structures ``dot`` and ``circ`` on one coalgebra."""

    def __init__(self, dot: HopfAlgebra, circ: HopfAlgebra, name: str | None = None):
        if dot.dim != circ.dim:
            raise DimMismatch(f"brace structures of dims {dot.dim} and {circ.dim}")
        self.dot = dot
        self.circ = circ
        self.name = name or f"brace({dot.name})"

    @property
    def dim(self) -> int:
        return self.dot.dim

    @cached_property
    def report(self) -> VerificationReport:
        return verify_hopf_brace(self)


def _nonunital_bialgebra_checks(rep: VerificationReport, circ: SparseTensor, coalg, prefix: str):
    D, e = coalg.comul, coalg.counit
    rep.add(compare(
        f"{prefix}:associativity",
        einsum("abp,pcl->abcl", circ, circ),
        einsum("bcp,apl->abcl", circ, circ),
        3, coalg.names(4),
    ))
    rep.add(compare(
        f"{prefix}:comultiplicative",
        einsum("abp,pxy->abxy", circ, D),
        einsum("ajk,bmn,jmx,kny->abxy", D, D, circ, circ),
        2, coalg.names(4),
    ))
    rep.add(compare(
        f"{prefix}:counit-multiplicative",
        einsum("abp,p->ab", circ, e),
        einsum("a,b->ab", e, e),
        2, coalg.names(2),
    ))


def verify_hopf_truss(T: HopfTruss) -> VerificationReport:
    hp, O = T.heap, T.circ
    rep = VerificationReport(f"hopf truss {T.name}")
    rep.extend(hp.report)
    _nonunital_bialgebra_checks(rep, O, hp.coalg, "truss")
    rep.add(compare(
        "truss:distributive",
        einsum("bcdp,apl->abcdl", hp.chi, O),
        einsum("apqr,pbs,qct,rdw,stwl->abcdl", hp.coalg.comul3, O, O, O, hp.chi),
        4, hp.coalg.names(5),
    ))
    return rep


def verify_truss_cocycle_form(T: CocycleTruss) -> VerificationReport:
    H, O, sig = T.hopf, T.circ, T.sigma
    C = H.coalg
    rep = VerificationReport(f"cocycle truss {T.name}")
    rep.extend(H.report)
    _nonunital_bialgebra_checks(rep, O, C, "truss")
    rep.add(compare(
        "cocycle:sigma-comultiplication",
        einsum("ajk,xj,yk->axy", C.comul, sig, sig),
        einsum("pa,pxy->axy", sig, C.comul),
        1, C.names(3),
    ))
    rep.add(compare("cocycle:sigma-counit", einsum("pa,p->a", sig, C.counit), C.counit, 1, C.names(1)))
    rep.add(compare(
        "cocycle:compatibility",
        einsum("bcp,apl->abcl", H.mul, O),
        einsum("apqr,pbs,tq,wt,rcv,swy,yvl->abcl", C.comul3, O, sig, H.antipode, O, H.mul, H.mul),
        3, C.names(4),
    ))
    return rep


def verify_hopf_brace(B: HopfBrace) -> VerificationReport:
    dot, circ = B.dot, B.circ
    rep = VerificationReport(f"hopf brace {B.name}")
    if dot.coalg != circ.coalg:
        rep.add(compare("brace:shared-coalgebra", dot.coalg.comul, circ.coalg.comul, 1))
    rep.extend(dot.report, "dot")
    rep.extend(circ.report, "circ")
    C = dot.coalg
    O = circ.mul
    rep.add(compare(
        "brace:compatibility",
        einsum("bcp,apl->abcl", dot.mul, O),
        einsum("apqr,pbs,wq,rcv,swy,yvl->abcl", C.comul3, O, dot.antipode, O, dot.mul, dot.mul),
        3, C.names(4),
    ))
    return rep


def _check(obj, what: str):
    if not obj.report.ok:
        raise ConstructionInvalid(f"constructed {what} fails verification", obj.report)
    return obj


def trivial_truss(hp: HopfHeap, x) -> HopfTruss:
    """``a∘b = ε(a)ε(b)x`` for a group-like ``x``."""
    hp.require_verified()
    x = as_vector(x, hp.dim)
    if not is_grouplike(hp.coalg, x):
        raise NotGroupLike("trivial truss needs a group-like element")
    e = hp.coalg.counit
    return _check(HopfTruss(hp, einsum("a,b,l->abl", e, e, x), f"trivial({hp.name})"), "truss")


def _require_commutative_cocommutative(hp: HopfHeap):
    if not is_commutative_heap(hp):
        raise NotCommutative(f"{hp.name} is not a commutative heap")
    if not is_cocommutative(hp.coalg):
        raise NotCocommutative(f"{hp.name} is not cocommutative")


def _require_endo(hp: HopfHeap, f: SparseTensor, label: str):
    rep = verify_heap_hom(f, hp, hp)
    if not rep.ok:
        raise NotHeapEndo(f"{label} is not a heap endomorphism: {rep.failures()[0].check_id}")


def alpha_truss(hp: HopfHeap, alpha: SparseTensor, variant: str = "first") -> HopfTruss:
    """``x∘y = [x_1, α(x_2), y]`` (first) or ``x∘y = [x, α(y_1), y_2]`` (second)."""
    hp.require_verified()
    _require_commutative_cocommutative(hp)
    _require_endo(hp, alpha, "alpha")
    if compose(alpha, alpha) != alpha:
        raise NotIdempotent("alpha∘alpha differs from alpha")
    D, X = hp.coalg.comul, hp.chi
    if variant == "first":
        circ = einsum("xpq,sq,psyl->xyl", D, alpha, X)
    elif variant == "second":
        circ = einsum("ypq,sp,xsql->xyl", D, alpha, X)
    else:
        raise ValueError(f"variant must be 'first' or 'second', not {variant!r}")
    return _check(HopfTruss(hp, circ, f"alpha-{variant}({hp.name})"), "truss")


def shifted_truss(T: CocycleTruss, x) -> CocycleTruss:
    """``a·_x b = a S(x) b`` with cocycle ``a -> a∘x``."""
    if not T.report.ok:
        raise NotVerified(f"{T.name} fails its axioms", T.report)
    H = T.hopf
    x = as_vector(x, H.dim)
    if not is_grouplike(H.coalg, x):
        raise NotGroupLike("shift element must be group-like")
    sx = einsum("ls,s->l", H.antipode, x)
    mul = einsum("s,asp,pbl->abl", sx, H.mul, H.mul)
    # x S(a) x inverts under the shifted product
    antipode = einsum("p,qa,pql,lrm,r->ma", x, H.antipode, H.mul, H.mul, x)
    hopf = HopfAlgebra(H.coalg, mul, x, antipode, f"{H.name}_x")
    sigma = einsum("asl,s->la", T.circ, x)
    return _check(CocycleTruss(hopf, T.circ, sigma, f"{T.name}_x"), "cocycle truss")


def solve_circ_unit(coalg, circ: SparseTensor):
    """Two-sided unit of ``∘`` as ``(vector, nullity)``; ``(None, 0)`` if none."""
    n = coalg.dim
    left = fuse_legs(einsum("sal->als", circ), [(0, 1), (2,)])
    right = fuse_legs(einsum("asl->als", circ), [(0, 1), (2,)])
    ident = fuse_legs(SparseTensor.identity(n), [(0, 1)]).to_list()
    x, nullity = solve_with_nullity(left.to_list() + right.to_list(), ident + ident, n)
    if x is None:
        return None, 0
    return SparseTensor.vector(x), nullity


def brace_to_truss(B: HopfBrace) -> HopfTruss:
    if not B.report.ok:
        raise NotVerified(f"{B.name} fails its axioms", B.report)
    hp = heap_from_hopf(B.dot)
    return _check(HopfTruss(hp, B.circ.mul, f"truss({B.name})"), "truss")


def truss_to_brace(T: HopfTruss) -> HopfBrace:
    """Use the ∘-unit ``1``: ``ab = [a, 1, b]`` and ``S(a) = [1, a, 1]``."""
    if not T.report.ok:
        raise NotVerified(f"{T.name} fails its axioms", T.report)
    one, nullity = solve_circ_unit(T.heap.coalg, T.circ)
    if one is None:
        raise NoCircUnit(f"{T.name}: the ∘-unit equations have no solution")
    if nullity:
        raise NoCircUnit(f"{T.name}: the ∘-unit is not unique (nullity {nullity})")
    dot = hopf_from_heap(T.heap, one)
    s_circ = find_antipode(T.heap.coalg, T.circ, one)
    if s_circ is None:
        raise NoAntipode(f"{T.name}: ∘ admits no antipode")
    circ = HopfAlgebra(T.heap.coalg, T.circ, one, s_circ, f"circ({T.name})")
    return _check(HopfBrace(dot, circ, f"brace({T.name})"), "brace")


def brace_truss_convert(obj, direction: str):
    """``direction`` is ``"to_truss"`` (from a brace) or ``"to_brace"`` (from a truss)."""
    if direction == "to_truss":
        return brace_to_truss(obj)
    if direction == "to_brace":
        return truss_to_brace(obj)
    raise ValueError(f"direction must be 'to_truss' or 'to_brace', not {direction!r}")


def cocycle_form(T: HopfTruss, x) -> CocycleTruss:
    """The cocycle presentation over ``H_x``, with ``sigma(a) = a∘x``."""
    x = as_vector(x, T.dim)
    hopf = hopf_from_heap(T.heap, x)
    sigma = einsum("asl,s->la", T.circ, x)
    return CocycleTruss(hopf, T.circ, sigma, f"{T.name}@x")


def endo_bracket(hp: HopfHeap, alpha: SparseTensor, beta: SparseTensor,
                 gamma: SparseTensor) -> SparseTensor:
    """The endomorphism ``x -> [α(x_1), β(x_2), γ(x_3)]``."""
    hp.require_verified()
    _require_commutative_cocommutative(hp)
    for label, f in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
        _require_endo(hp, f, label)
    out = einsum("xpqr,ip,jq,kr,ijkl->lx", hp.coalg.comul3, alpha, beta, gamma, hp.chi)
    rep = verify_heap_hom(out, hp, hp)
    if not rep.ok:
        raise ConstructionInvalid("bracket of endomorphisms is not an endomorphism", rep)
    return out
