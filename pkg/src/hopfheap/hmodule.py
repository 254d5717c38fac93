"""Left and right Hopf heap modules, Hopf modules, coinvariants and the structure theorem.

Tensor layouts (``M`` the module, ``H`` the parent):

* left heap action ``A[h, g, m, out]`` is ``(h⊗g)▷m``; left coaction ``R[m, h, m']``;
* right heap action ``A[m, g, h, out]`` is ``m◁(g⊗h)``; right coaction ``R[m, m', h]``;
* Hopf module actions are ``L[h, m, out]`` (left) and ``L[m, h, out]`` (right).

Free modules use row-major indices: ``H⊗V`` at ``a*dimV + j`` and ``V⊗H`` at ``j*dimH + a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .coalg import as_vector, is_grouplike
from .errors import ConstructionInvalid, DimMismatch, NotCommutative, NotGroupLike
from .heap import HopfAlgebra, HopfHeap, heap_from_hopf, hopf_from_heap, is_commutative_heap
from .kernel import SparseTensor, compose, coordinates, einsum, fuse_legs, kernel_basis
from .report import VerificationReport, compare

SIDES = ("left", "right")


def _check_side(side: str):
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")


class HeapModule:
    def __init__(self, parent: HopfHeap, side: str, action: SparseTensor, coaction: SparseTensor,
                 basis=None, name: str = "M"):
        _check_side(side)
        n = parent.dim
        m = coaction.dims[0] if coaction.arity == 3 else -1
        want_action = (n, n, m, m) if side == "left" else (m, n, n, m)
        want_coaction = (m, n, m) if side == "left" else (m, m, n)
        if action.dims != want_action or coaction.dims != want_coaction:
            raise DimMismatch(f"{side} module tensors {action.dims}, {coaction.dims} "
                              f"expected {want_action}, {want_coaction}")
        self.parent = parent
        self.side = side
        self.action = action
        self.coaction = coaction
        self.basis = list(basis) if basis is not None else [f"m{i}" for i in range(m)]
        if len(self.basis) != m:
            raise DimMismatch(f"{len(self.basis)} names for module dimension {m}")
        self.name = name

    @property
    def dim(self) -> int:
        return self.coaction.dims[0]

    @cached_property
    def report(self) -> VerificationReport:
        return verify_heap_module(self)

    def __repr__(self) -> str:
        return f"HeapModule({self.name!r}, {self.side}, dim={self.dim})"


class HopfModule:
    def __init__(self, parent: HopfAlgebra, side: str, action: SparseTensor, coaction: SparseTensor,
                 basis=None, name: str = "M"):
        _check_side(side)
        n = parent.dim
        m = coaction.dims[0] if coaction.arity == 3 else -1
        want_action = (n, m, m) if side == "left" else (m, n, m)
        want_coaction = (m, n, m) if side == "left" else (m, m, n)
        if action.dims != want_action or coaction.dims != want_coaction:
            raise DimMismatch(f"{side} Hopf module tensors {action.dims}, {coaction.dims} "
                              f"expected {want_action}, {want_coaction}")
        self.parent = parent
        self.side = side
        self.action = action
        self.coaction = coaction
        self.basis = list(basis) if basis is not None else [f"m{i}" for i in range(m)]
        self.name = name

    @property
    def dim(self) -> int:
        return self.coaction.dims[0]

    @cached_property
    def report(self) -> VerificationReport:
        return verify_hopf_module(self)


@dataclass(frozen=True)
class Coinvariants:
    side: str
    x: SparseTensor
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, dim_m: int) -> SparseTensor:
        """Basis vectors as the columns of a ``dim_m x dim`` matrix."""
        entries = {(i, j): v for j, b in enumerate(self.basis) for (i,), v in b.items()}
        return SparseTensor((dim_m, len(self.basis)), entries)


@dataclass(frozen=True)
class StructureIso:
    """``alpha: H⊗K -> M`` (left) or ``K⊗H -> M`` (right), ``beta`` its inverse, ``K`` the coinvariants."""
    alpha: SparseTensor
    beta: SparseTensor
    projection: SparseTensor
    coinvariants: Coinvariants


def _comodule_checks(rep, side, R, coalg, mnames):
    D, e = coalg.comul, coalg.counit
    h = coalg.basis
    ident = SparseTensor.identity(R.dims[0])
    if side == "left":
        rep.add(compare("comodule:coassociativity",
                        einsum("mpz,pxy->mxyz", R, D), einsum("mxq,qyz->mxyz", R, R),
                        1, [mnames, h, h, mnames]))
        rep.add(compare("comodule:counit", einsum("mpq,p->mq", R, e), ident, 1, [mnames, mnames]))
    else:
        rep.add(compare("comodule:coassociativity",
                        einsum("mqz,qxy->mxyz", R, R), einsum("mxp,pyz->mxyz", R, D),
                        1, [mnames, mnames, h, h]))
        rep.add(compare("comodule:counit", einsum("mqp,p->mq", R, e), ident, 1, [mnames, mnames]))


def verify_heap_module(M: HeapModule) -> VerificationReport:
    hp = M.parent
    X, D, e = hp.chi, hp.coalg.comul, hp.coalg.counit
    A, R = M.action, M.coaction
    h, m = hp.basis, M.basis
    ident = SparseTensor.identity(M.dim)
    rep = VerificationReport(f"{M.side} heap module {M.name}")
    _comodule_checks(rep, M.side, R, hp.coalg, m)
    if M.side == "left":
        rep.add(compare("module:bracket-action",
                        einsum("abcp,pdmo->abcdmo", X, A), einsum("cdmq,abqo->abcdmo", A, A),
                        5, [h, h, h, h, m, m]))
        rep.add(compare("module:counit-action",
                        einsum("cpq,pqmo->cmo", D, A), einsum("c,mo->cmo", e, ident),
                        2, [h, m, m]))
        rep.add(compare("module:coaction-compatibility",
                        einsum("cdmp,pxy->cdmxy", A, R),
                        einsum("cij,dkl,mst,ilsx,jkty->cdmxy", D, D, R, X, A),
                        3, [h, h, m, h, m]))
    else:
        rep.add(compare("module:bracket-action",
                        einsum("bcdp,mapo->mabcdo", X, A), einsum("mabq,qcdo->mabcdo", A, A),
                        5, [m, h, h, h, h, m]))
        rep.add(compare("module:counit-action",
                        einsum("cpq,mpqo->mco", D, A), einsum("c,mo->mco", e, ident),
                        2, [m, h, m]))
        rep.add(compare("module:coaction-compatibility",
                        einsum("mcdp,pxy->mcdxy", A, R),
                        einsum("mst,cij,dkl,sjkx,tily->mcdxy", R, D, D, A, X),
                        3, [m, h, h, m, h]))
    return rep


def verify_hopf_module(M: HopfModule) -> VerificationReport:
    H = M.parent
    Mu, D = H.mul, H.coalg.comul
    L, R = M.action, M.coaction
    h, m = H.basis, M.basis
    ident = SparseTensor.identity(M.dim)
    rep = VerificationReport(f"{M.side} Hopf module {M.name}")
    _comodule_checks(rep, M.side, R, H.coalg, m)
    if M.side == "left":
        rep.add(compare("hopfmodule:associativity",
                        einsum("hkp,pmo->hkmo", Mu, L), einsum("kmq,hqo->hkmo", L, L),
                        3, [h, h, m, m]))
        rep.add(compare("hopfmodule:unit", einsum("u,umo->mo", H.unit, L), ident, 1, [m, m]))
        rep.add(compare("hopfmodule:compatibility",
                        einsum("hmp,pxy->hmxy", L, R),
                        einsum("hij,mst,isx,jty->hmxy", D, R, Mu, L),
                        2, [h, m, h, m]))
    else:
        rep.add(compare("hopfmodule:associativity",
                        einsum("mhp,pko->mhko", L, L), einsum("hkp,mpo->mhko", Mu, L),
                        3, [m, h, h, m]))
        rep.add(compare("hopfmodule:unit", einsum("u,muo->mo", H.unit, L), ident, 1, [m, m]))
        rep.add(compare("hopfmodule:compatibility",
                        einsum("mhp,pxy->mhxy", L, R),
                        einsum("mst,hij,six,tjy->mhxy", R, D, L, Mu),
                        2, [m, h, m, h]))
    return rep


def self_module(hp: HopfHeap, side: str = "left") -> HeapModule:
    """The parent acting on itself through its bracket, with coaction ``Δ``."""
    _check_side(side)
    return HeapModule(hp, side, hp.chi, hp.coalg.comul, hp.basis, f"self({hp.name})")


def free_heap_module(hp: HopfHeap, dim_v: int, side: str = "left") -> HeapModule:
    """``H⊗V`` with ``(h⊗g)▷(l⊗v) = [h,g,l]⊗v`` or ``V⊗H`` with ``(v⊗h)◁(g⊗l) = v⊗[h,g,l]``."""
    _check_side(side)
    X, D = hp.chi, hp.coalg.comul
    iv = SparseTensor.identity(dim_v)
    vnames = [f"v{j}" for j in range(dim_v)]
    if side == "left":
        action = fuse_legs(einsum("hglo,vw->hglvow", X, iv), [(0,), (1,), (2, 3), (4, 5)])
        coaction = fuse_legs(einsum("lxy,vw->lvxyw", D, iv), [(0, 1), (2,), (3, 4)])
        basis = [f"{a}⊗{v}" for a in hp.basis for v in vnames]
    else:
        action = fuse_legs(einsum("vw,hglo->vhglwo", iv, X), [(0, 1), (2,), (3,), (4, 5)])
        coaction = fuse_legs(einsum("vw,hxy->vhwxy", iv, D), [(0, 1), (2, 3), (4,)])
        basis = [f"{v}⊗{a}" for v in vnames for a in hp.basis]
    return HeapModule(hp, side, action, coaction, basis, f"free-{side}({hp.name},{dim_v})")


def _check(obj, what: str):
    if not obj.report.ok:
        raise ConstructionInvalid(f"constructed {what} fails verification", obj.report)
    return obj


def _require_grouplike(hp_or_hopf, x):
    x = as_vector(x, hp_or_hopf.dim)
    if not is_grouplike(hp_or_hopf.coalg, x):
        raise NotGroupLike("the chosen element is not group-like")
    return x


def hopfmod_from_heapmod(M: HeapModule, x) -> HopfModule:
    """``h·m = (h⊗x)▷m`` on the left, ``m·h = m◁(x⊗h)`` on the right."""
    x = _require_grouplike(M.parent, x)
    H = hopf_from_heap(M.parent, x)
    if M.side == "left":
        action = einsum("hsmo,s->hmo", M.action, x)
    else:
        action = einsum("msho,s->mho", M.action, x)
    return _check(HopfModule(H, M.side, action, M.coaction, M.basis, f"{M.name}_x"), "Hopf module")


def heapmod_from_hopfmod(M: HopfModule) -> HeapModule:
    """``(a⊗b)▷m = aS(b)·m`` on the left, ``m◁(a⊗b) = m·S(a)b`` on the right."""
    H = M.parent
    hp = heap_from_hopf(H)
    if M.side == "left":
        action = einsum("sb,asp,pmo->abmo", H.antipode, H.mul, M.action)
    else:
        action = einsum("sa,sbp,mpo->mabo", H.antipode, H.mul, M.action)
    return _check(HeapModule(hp, M.side, action, M.coaction, M.basis, f"Hp({M.name})"), "heap module")


def coinvariants(M: HeapModule, x) -> Coinvariants:
    """Kernel of ``m -> ρ(m) - x⊗m`` (left) or ``m -> ρ(m) - m⊗x`` (right)."""
    x = _require_grouplike(M.parent, x)
    ident = SparseTensor.identity(M.dim)
    if M.side == "left":
        system = einsum("mht->htm", M.coaction) - einsum("h,tm->htm", x, ident)
    else:
        system = einsum("mth->thm", M.coaction) - einsum("tm,h->thm", ident, x)
    system = fuse_legs(system, [(0, 1), (2,)])
    return Coinvariants(M.side, x, tuple(kernel_basis(system)))


def _coordinate_matrix(K: Coinvariants, proj: SparseTensor, dim_m: int) -> SparseTensor:
    """Coordinates in the coinvariant basis of each column of ``proj``."""
    k = K.dim
    entries = {}
    for col in range(dim_m):
        c = coordinates(list(K.basis), proj.slice(1, col))
        if c is None:
            raise ConstructionInvalid("projection leaves the coinvariants")
        for j, v in enumerate(c):
            entries[(j, col)] = v
    return SparseTensor((k, dim_m), entries)


def structure_iso(M: HeapModule, x) -> StructureIso:
    """Mutually inverse maps between ``M`` and the free module on its coinvariants."""
    x = _require_grouplike(M.parent, x)
    K = coinvariants(M, x)
    kmat = K.matrix(M.dim)
    A, R = M.action, M.coaction
    if M.side == "left":
        proj = einsum("s,mht,shto->om", x, R, A)
        q = _coordinate_matrix(K, proj, M.dim)
        alpha = fuse_legs(einsum("s,asto,tj->oaj", x, A, kmat), [(0,), (1, 2)])
        beta = fuse_legs(einsum("mht,jt->hjm", R, q), [(0, 1), (2,)])
    else:
        proj = einsum("mth,s,thso->om", R, x, A)
        q = _coordinate_matrix(K, proj, M.dim)
        alpha = fuse_legs(einsum("tj,s,tsho->ojh", kmat, x, A), [(0,), (1, 2)])
        beta = fuse_legs(einsum("mth,jt->jhm", R, q), [(0, 1), (2,)])
    iso = StructureIso(alpha, beta, proj, K)
    if compose(alpha, beta) != SparseTensor.identity(M.dim) or \
            compose(beta, alpha) != SparseTensor.identity(beta.dims[0]):
        raise ConstructionInvalid("structure maps are not mutually inverse")
    return iso


def structure_source(M: HeapModule, iso: StructureIso) -> HeapModule:
    """The free module on the coinvariants, the domain of ``iso.alpha``."""
    return free_heap_module(M.parent, iso.coinvariants.dim, M.side)


def verify_module_hom(f: SparseTensor, M: HeapModule, N: HeapModule) -> VerificationReport:
    if M.side != N.side or f.dims != (N.dim, M.dim):
        raise DimMismatch(f"map {f.dims} between {M.side} module {M.dim} and {N.side} module {N.dim}")
    h = M.parent.basis
    rep = VerificationReport(f"module hom {M.name} -> {N.name}")
    if M.side == "left":
        rep.add(compare("hom:coaction",
                        einsum("pm,phq->mhq", f, N.coaction), einsum("mht,qt->mhq", M.coaction, f),
                        1, [M.basis, h, N.basis]))
        rep.add(compare("hom:action",
                        einsum("abmp,op->abmo", M.action, f), einsum("pm,abpo->abmo", f, N.action),
                        3, [h, h, M.basis, N.basis]))
    else:
        rep.add(compare("hom:coaction",
                        einsum("pm,pqh->mqh", f, N.coaction), einsum("mth,qt->mqh", M.coaction, f),
                        1, [M.basis, N.basis, h]))
        rep.add(compare("hom:action",
                        einsum("mabp,op->mabo", M.action, f), einsum("pm,pabo->mabo", f, N.action),
                        3, [M.basis, h, h, N.basis]))
    return rep


def verify_hopf_module_hom(f: SparseTensor, M: HopfModule, N: HopfModule) -> VerificationReport:
    if M.side != N.side or f.dims != (N.dim, M.dim):
        raise DimMismatch(f"map {f.dims} between Hopf modules of dims {M.dim}, {N.dim}")
    h = M.parent.basis
    rep = VerificationReport(f"Hopf module hom {M.name} -> {N.name}")
    if M.side == "left":
        rep.add(compare("hom:coaction",
                        einsum("pm,phq->mhq", f, N.coaction), einsum("mht,qt->mhq", M.coaction, f),
                        1, [M.basis, h, N.basis]))
        rep.add(compare("hom:action",
                        einsum("hmp,op->hmo", M.action, f), einsum("pm,hpo->hmo", f, N.action),
                        2, [h, M.basis, N.basis]))
    else:
        rep.add(compare("hom:coaction",
                        einsum("pm,pqh->mqh", f, N.coaction), einsum("mth,qt->mqh", M.coaction, f),
                        1, [M.basis, N.basis, h]))
        rep.add(compare("hom:action",
                        einsum("mhp,op->mho", M.action, f), einsum("pm,pho->mho", f, N.action),
                        2, [M.basis, h, N.basis]))
    return rep


def verify_right_commutative_identities(M: HeapModule) -> VerificationReport:
    """Identities of right modules over commutative heaps.

    ``m◁(a⊗[b,c,d]) = m◁([a,b,c]⊗d)`` and ``m◁(c_1⊗c_2) = m◁(c_2⊗c_1)``.
    """
    if M.side != "right":
        raise ValueError("these identities concern right modules")
    if not is_commutative_heap(M.parent):
        raise NotCommutative(f"{M.parent.name} is not a commutative heap")
    X, D, A = M.parent.chi, M.parent.coalg.comul, M.action
    h, m = M.parent.basis, M.basis
    rep = VerificationReport(f"commutative right-module identities {M.name}")
    rep.add(compare("module:bracket-shift",
                    einsum("bcdp,mapo->mabcdo", X, A), einsum("abcp,mpdo->mabcdo", X, A),
                    5, [m, h, h, h, h, m]))
    rep.add(compare("module:counit-symmetric",
                    einsum("cpq,mpqo->mco", D, A), einsum("cpq,mqpo->mco", D, A),
                    2, [m, h, m]))
    return rep
