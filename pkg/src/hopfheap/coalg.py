"""Coalgebras given by structure constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import DimMismatch, FieldMismatch, UnsupportedDimension
from .kernel import ONE, FieldSpec, Scalar, SparseTensor, einsum, fuse_legs, roots_in_field
from .kernel.linalg import charpoly
from .report import VerificationReport, compare

GROUPLIKE_SOLVER_MAX_DIM = 4


class Coalgebra:
    """``Delta(e_i) = sum D[i, j, k] e_j (x) e_k`` and ``epsilon(e_i) = counit[i]``."""

    def __init__(
        self,
        comul: SparseTensor,
        counit: SparseTensor,
        basis: Sequence[str] | None = None,
        field: FieldSpec | None = None,
        name: str = "C",
    ):
        n = counit.dims[0] if counit.arity == 1 else -1
        if counit.arity != 1 or comul.dims != (n, n, n):
            raise DimMismatch(f"comultiplication {comul.dims} and counit {counit.dims} disagree")
        self.comul = comul
        self.counit = counit
        self.field = field or FieldSpec()
        self.basis = list(basis) if basis is not None else [f"e{i}" for i in range(n)]
        if len(self.basis) != n:
            raise DimMismatch(f"{len(self.basis)} basis names for dimension {n}")
        self.name = name
        for t in (comul, counit):
            for v in t.entries.values():
                if not self.field.contains(v):
                    raise FieldMismatch(f"entry {v} of {name} outside {self.field}")

    @property
    def dim(self) -> int:
        return self.counit.dims[0]

    def with_field(self, field: FieldSpec) -> Coalgebra:
        return Coalgebra(self.comul, self.counit, self.basis, field, self.name)

    @cached_property
    def comul3(self) -> SparseTensor:
        """Iterated comultiplication ``a -> a_1 (x) a_2 (x) a_3``."""
        return einsum("apz,pxy->axyz", self.comul, self.comul)

    @cached_property
    def comul4(self) -> SparseTensor:
        """``a -> a_1 (x) a_2 (x) a_3 (x) a_4``."""
        return einsum("apyz,pwx->awxyz", self.comul3, self.comul)

    def names(self, legs: int) -> list[list[str]]:
        return [self.basis] * legs

    @cached_property
    def report(self) -> VerificationReport:
        return verify_coalgebra(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return self.comul == other.comul and self.counit == other.counit

    def __hash__(self):
        return hash((self.comul, self.counit))

    def __repr__(self) -> str:
        return f"Coalgebra({self.name!r}, dim={self.dim}, field={self.field})"


@dataclass(frozen=True)
class GroupLike:
    vector: SparseTensor

    def __iter__(self):
        return iter(self.vector.to_list())


def as_vector(x, n: int | None = None) -> SparseTensor:
    if isinstance(x, GroupLike):
        x = x.vector
    if not isinstance(x, SparseTensor):
        x = SparseTensor.vector([Scalar.coerce(c) for c in x])
    if x.arity != 1 or (n is not None and x.dims[0] != n):
        raise DimMismatch(f"expected a vector of length {n}, got dims {x.dims}")
    return x


def verify_coalgebra(C: Coalgebra) -> VerificationReport:
    rep = VerificationReport(f"coalgebra {C.name}")
    D, e = C.comul, C.counit
    n = C.dim
    ident = SparseTensor.identity(n)
    rep.add(compare(
        "coalgebra:coassociativity",
        einsum("apz,pxy->axyz", D, D),
        einsum("axp,pyz->axyz", D, D),
        1, C.names(4),
    ))
    rep.add(compare("coalgebra:counit-left", einsum("apq,p->aq", D, e), ident, 1, C.names(2)))
    rep.add(compare("coalgebra:counit-right", einsum("aqp,p->aq", D, e), ident, 1, C.names(2)))
    return rep


def is_cocommutative(C: Coalgebra) -> bool:
    return C.comul == einsum("ajk->akj", C.comul)


def opposite_coalgebra(C: Coalgebra) -> Coalgebra:
    return Coalgebra(einsum("ajk->akj", C.comul), C.counit, C.basis, C.field, f"{C.name}^cop")


def tensor_coalgebra(C: Coalgebra, D: Coalgebra) -> Coalgebra:
    if C.field != D.field:
        raise FieldMismatch(f"{C.field} vs {D.field}")
    comul = fuse_legs(einsum("apq,bxy->abpxqy", C.comul, D.comul), [(0, 1), (2, 3), (4, 5)])
    counit = fuse_legs(einsum("a,b->ab", C.counit, D.counit), [(0, 1)])
    basis = [f"{a}⊗{h}" for a in C.basis for h in D.basis]
    return Coalgebra(comul, counit, basis, C.field, f"{C.name}⊗{D.name}")


def is_grouplike(C: Coalgebra, x) -> bool:
    x = as_vector(x, C.dim)
    if einsum("a,a->", x, C.counit)[()] != ONE:
        return False
    return einsum("a,ajk->jk", x, C.comul) == einsum("j,k->jk", x, x)


def counit_of(C: Coalgebra, x) -> Scalar:
    return einsum("a,a->", as_vector(x, C.dim), C.counit)[()]


def find_grouplikes(C: Coalgebra, hints=None) -> list[GroupLike]:
    """All group-like elements of ``C`` over its field, sorted by coordinates.

    From ``Delta(x) = x (x) x`` one gets ``M_j x = x_j x`` with
    ``(M_j)[k, i] = D[i, j, k]``, so each coordinate ``x_j`` is an eigenvalue
    of ``M_j`` in the field.  The candidates are the finitely many tuples of
    such eigenvalues; each is checked exactly.  Above the solver's dimension
    limit only the supplied hints are verified and returned.
    """
    n = C.dim
    if n > GROUPLIKE_SOLVER_MAX_DIM:
        if hints is None:
            raise UnsupportedDimension(
                f"group-like solver handles dim <= {GROUPLIKE_SOLVER_MAX_DIM}; supply hints"
            )
        found = [as_vector(h, n) for h in hints if is_grouplike(C, h)]
    else:
        candidate_sets = []
        for j in range(n):
            mj = einsum("ik->ki", C.comul.slice(1, j))
            candidate_sets.append(roots_in_field(charpoly(mj), C.field))
        found = []
        for combo in itertools.product(*candidate_sets):
            x = SparseTensor.vector(list(combo))
            if is_grouplike(C, x):
                found.append(x)
    uniq = {x: None for x in found}
    ordered = sorted(uniq, key=lambda v: [c.sort_key() for c in v.to_list()])
    return [GroupLike(x) for x in ordered]
