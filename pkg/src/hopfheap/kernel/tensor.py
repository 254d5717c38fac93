"""Sparse multi-index tensors with exact entries, and contraction.

Every structure map in the library is a :class:`SparseTensor`.  Conventions:

* comultiplication ``D[i, j, k]``: coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``;
* brackets ``X[i, j, k, l]``: coefficient of ``e_l`` in ``[e_i, e_j, e_k]``;
* counits and vectors have one leg;
* linear maps have two legs, ``(output, input)``.

Legs may have different dimensions (modules live in their own spaces).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from ..errors import BadPermutation, DimMismatch
from .scalar import ONE, Scalar


class SparseTensor:
    """Immutable map from index tuples to nonzero scalars."""

    __slots__ = ("dims", "_entries", "_hash")

    def __init__(self, dims: Sequence[int], entries: Mapping[tuple, object] | None = None):
        self.dims = tuple(int(n) for n in dims)
        if any(n < 0 for n in self.dims):
            raise DimMismatch(f"negative dimension in {self.dims}")
        clean = {}
        for idx, val in (entries or {}).items():
            idx = tuple(idx)
            if len(idx) != len(self.dims):
                raise DimMismatch(f"index {idx} has wrong arity for dims {self.dims}")
            for i, n in zip(idx, self.dims):
                if not 0 <= i < n:
                    raise DimMismatch(f"index {idx} out of range for dims {self.dims}")
            val = Scalar.coerce(val)
            if val:
                clean[idx] = val
        self._entries = clean
        self._hash = None

    @classmethod
    def _trusted(cls, dims: tuple, entries: dict) -> SparseTensor:
        t = object.__new__(cls)
        t.dims = dims
        t._entries = {k: v for k, v in entries.items() if v}
        t._hash = None
        return t

    # constructors

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> SparseTensor:
        return cls._trusted(tuple(dims), {})

    @classmethod
    def scalar(cls, value=1) -> SparseTensor:
        return cls((), {(): value})

    @classmethod
    def vector(cls, values: Sequence) -> SparseTensor:
        return cls((len(values),), {(i,): v for i, v in enumerate(values)})

    @classmethod
    def basis_vector(cls, n: int, i: int) -> SparseTensor:
        return cls((n,), {(i,): 1})

    @classmethod
    def identity(cls, n: int) -> SparseTensor:
        return cls._trusted((n, n), {(i, i): ONE for i in range(n)})

    @classmethod
    def matrix(cls, rows: Sequence[Sequence]) -> SparseTensor:
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls((nrows, ncols), {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def from_function(cls, dims: Sequence[int], fn) -> SparseTensor:
        dims = tuple(dims)
        return cls(dims, {idx: fn(*idx) for idx in itertools.product(*map(range, dims))})

    # access

    @property
    def arity(self) -> int:
        return len(self.dims)

    @property
    def entries(self) -> Mapping[tuple, Scalar]:
        return self._entries

    def items(self):
        return self._entries.items()

    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, idx) -> Scalar:
        if not isinstance(idx, tuple):
            idx = (idx,)
        return self._entries.get(idx, Scalar(0))

    def __iter__(self):
        raise TypeError("iterate over .items() instead")

    def to_list(self):
        """Dense nested lists (vectors give a flat list)."""
        if self.arity == 0:
            return self[()]
        if self.arity == 1:
            return [self[(i,)] for i in range(self.dims[0])]
        return [self.slice(0, i).to_list() for i in range(self.dims[0])]

    def slice(self, leg: int, i: int) -> SparseTensor:
        dims = self.dims[:leg] + self.dims[leg + 1:]
        return SparseTensor._trusted(
            dims, {k[:leg] + k[leg + 1:]: v for k, v in self._entries.items() if k[leg] == i}
        )

    # algebra

    def _check_same(self, other: SparseTensor):
        if self.dims != other.dims:
            raise DimMismatch(f"dims {self.dims} vs {other.dims}")

    def __add__(self, other: SparseTensor) -> SparseTensor:
        self._check_same(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out[k] + v if k in out else v
        return SparseTensor._trusted(self.dims, out)

    def __neg__(self) -> SparseTensor:
        return SparseTensor._trusted(self.dims, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: SparseTensor) -> SparseTensor:
        return self + (-other)

    def scale(self, c) -> SparseTensor:
        c = Scalar.coerce(c)
        return SparseTensor._trusted(self.dims, {k: c * v for k, v in self._entries.items()})

    def __rmul__(self, c) -> SparseTensor:
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return self.dims == other.dims and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dims, frozenset(self._entries.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self._entries

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._entries.items()))
        return f"SparseTensor({self.dims}, {{{body}}})"

    def map_entries(self, fn) -> SparseTensor:
        return SparseTensor._trusted(self.dims, {k: fn(v) for k, v in self._entries.items()})


# leg manipulation


def permute_legs(t: SparseTensor, perm: Sequence[int]) -> SparseTensor:
    """Leg ``i`` of ``t`` becomes leg ``perm[i]`` of the result."""
    perm = tuple(perm)
    if sorted(perm) != list(range(t.arity)):
        raise BadPermutation(f"{perm} is not a permutation of {t.arity} legs")
    dims = [0] * t.arity
    for i, p in enumerate(perm):
        dims[p] = t.dims[i]
    out = {}
    for idx, v in t.items():
        new = [0] * t.arity
        for i, p in enumerate(perm):
            new[p] = idx[i]
        out[tuple(new)] = v
    return SparseTensor._trusted(tuple(dims), out)


def tensor_product_t(t1: SparseTensor, t2: SparseTensor) -> SparseTensor:
    out = {}
    for i1, v1 in t1.items():
        for i2, v2 in t2.items():
            out[i1 + i2] = v1 * v2
    return SparseTensor._trusted(t1.dims + t2.dims, out)


def contract(t1: SparseTensor, t2: SparseTensor, pairs: Iterable[tuple[int, int]]) -> SparseTensor:
    """Sum over paired legs; free legs of ``t1`` come first, then those of ``t2``."""
    pairs = list(pairs)
    left = [p[0] for p in pairs]
    right = [p[1] for p in pairs]
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise DimMismatch("contraction pairs must be disjoint")
    for a, b in pairs:
        if not (0 <= a < t1.arity and 0 <= b < t2.arity):
            raise DimMismatch(f"leg pair {(a, b)} out of range")
        if t1.dims[a] != t2.dims[b]:
            raise DimMismatch(f"leg {a} (dim {t1.dims[a]}) vs leg {b} (dim {t2.dims[b]})")
    free1 = [i for i in range(t1.arity) if i not in left]
    free2 = [i for i in range(t2.arity) if i not in right]
    groups = defaultdict(list)
    for idx, v in t2.items():
        groups[tuple(idx[b] for b in right)].append((tuple(idx[i] for i in free2), v))
    out = {}
    for idx, v in t1.items():
        bucket = groups.get(tuple(idx[a] for a in left))
        if not bucket:
            continue
        head = tuple(idx[i] for i in free1)
        for tail, w in bucket:
            key = head + tail
            p = v * w
            out[key] = out[key] + p if key in out else p
    dims = tuple(t1.dims[i] for i in free1) + tuple(t2.dims[i] for i in free2)
    return SparseTensor._trusted(dims, out)


def fuse_legs(t: SparseTensor, groups: Sequence[Sequence[int]]) -> SparseTensor:
    """Merge consecutive groups of legs into single legs (row-major)."""
    flat = [i for g in groups for i in g]
    if flat != list(range(t.arity)):
        raise BadPermutation("fuse groups must cover the legs in order")
    dims = []
    for g in groups:
        n = 1
        for i in g:
            n *= t.dims[i]
        dims.append(n)
    out = {}
    for idx, v in t.items():
        key = []
        for g in groups:
            k = 0
            for i in g:
                k = k * t.dims[i] + idx[i]
            key.append(k)
        out[tuple(key)] = v
    return SparseTensor._trusted(tuple(dims), out)


def split_leg(t: SparseTensor, leg: int, dims: Sequence[int]) -> SparseTensor:
    """Inverse of :func:`fuse_legs` for a single leg."""
    dims = tuple(dims)
    size = 1
    for n in dims:
        size *= n
    if size != t.dims[leg]:
        raise DimMismatch(f"cannot split dim {t.dims[leg]} into {dims}")
    out = {}
    for idx, v in t.items():
        k = idx[leg]
        parts = []
        for n in reversed(dims):
            parts.append(k % n)
            k //= n
        out[idx[:leg] + tuple(reversed(parts)) + idx[leg + 1:]] = v
    return SparseTensor._trusted(t.dims[:leg] + dims + t.dims[leg + 1:], out)


# einsum


def _parse_subscripts(subscripts: str, nops: int):
    subscripts = subscripts.replace(" ", "")
    if "->" not in subscripts:
        raise ValueError("einsum needs an explicit output: 'ab,bc->ac'")
    lhs, out = subscripts.split("->")
    ins = lhs.split(",")
    if len(ins) != nops:
        raise ValueError(f"{len(ins)} operand specs for {nops} operands")
    if len(set(out)) != len(out):
        raise ValueError("repeated output label")
    return ins, out


def _reduce_single(t: SparseTensor, labels: str, keep: set):
    """Collapse repeated labels (diagonal) and sum out labels not in ``keep``."""
    seen = []
    for c in labels:
        if c not in seen:
            seen.append(c)
    target = [c for c in seen if c in keep]
    if target == list(labels):
        return t, labels
    pos = {c: labels.index(c) for c in seen}
    out = {}
    for idx, v in t.items():
        ok = True
        for i, c in enumerate(labels):
            if idx[i] != idx[pos[c]]:
                ok = False
                break
        if not ok:
            continue
        key = tuple(idx[pos[c]] for c in target)
        out[key] = out[key] + v if key in out else v
    dims = tuple(t.dims[pos[c]] for c in target)
    return SparseTensor._trusted(dims, out), "".join(target)


def _pair(a: SparseTensor, la: str, b: SparseTensor, lb: str, keep: set):
    shared = [c for c in la if c in lb]
    ia = [la.index(c) for c in shared]
    ib = [lb.index(c) for c in shared]
    for x, y in zip(ia, ib):
        if a.dims[x] != b.dims[y]:
            raise DimMismatch(f"label {la[x]!r}: dim {a.dims[x]} vs {b.dims[y]}")
    out_labels = [c for c in la if c in keep] + [c for c in lb if c in keep and c not in la]
    src = []
    for c in out_labels:
        src.append((0, la.index(c)) if c in la else (1, lb.index(c)))
    groups = defaultdict(list)
    for idx, v in b.items():
        groups[tuple(idx[i] for i in ib)].append((idx, v))
    out = {}
    for idx_a, va in a.items():
        bucket = groups.get(tuple(idx_a[i] for i in ia))
        if not bucket:
            continue
        for idx_b, vb in bucket:
            key = tuple(idx_a[i] if s == 0 else idx_b[i] for s, i in src)
            p = va * vb
            out[key] = out[key] + p if key in out else p
    dims = tuple(a.dims[i] if s == 0 else b.dims[i] for s, i in src)
    return SparseTensor._trusted(dims, out), "".join(out_labels)


def einsum(subscripts: str, *operands: SparseTensor) -> SparseTensor:
    """Exact sparse Einstein summation with single-character labels.

    Operands are contracted pairwise, greedily choosing the connected pair
    with the smallest product of supports, so intermediate supports stay small
    for the typically very sparse structure tensors.
    """
    ins, out = _parse_subscripts(subscripts, len(operands))
    for spec, t in zip(ins, operands):
        if len(spec) != t.arity:
            raise DimMismatch(f"spec {spec!r} for tensor of arity {t.arity}")
    dim_of = {}
    for spec, t in zip(ins, operands):
        for c, n in zip(spec, t.dims):
            if dim_of.setdefault(c, n) != n:
                raise DimMismatch(f"label {c!r} has inconsistent dimensions")
    for c in out:
        if c not in dim_of:
            raise ValueError(f"output label {c!r} not present in inputs")

    work = []
    for k, (spec, t) in enumerate(zip(ins, operands)):
        others = set(out).union(*(set(s) for j, s in enumerate(ins) if j != k))
        work.append(_reduce_single(t, spec, others))

    while len(work) > 1:
        best = None
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                connected = bool(set(work[i][1]) & set(work[j][1]))
                cost = (not connected, work[i][0].nnz() * work[j][0].nnz())
                if best is None or cost < best[0]:
                    best = (cost, i, j)
        _, i, j = best
        (a, la), (b, lb) = work[i], work[j]
        rest = [w for k, w in enumerate(work) if k not in (i, j)]
        keep = set(out).union(*(set(lbl) for _, lbl in rest))
        if a.nnz() == 0 or b.nnz() == 0:
            labels = "".join(c for c in dict.fromkeys(la + lb) if c in keep)
            merged = (SparseTensor.zeros(tuple(dim_of[c] for c in labels)), labels)
        else:
            merged = _pair(a, la, b, lb, keep)
        work = rest + [merged]

    t, labels = work[0]
    t, labels = _reduce_single(t, labels, set(out))
    if labels != out:
        perm = [out.index(c) for c in labels]
        t = permute_legs(t, perm)
    return t


# linear-map helpers (maps are (output, input) matrices)


def apply(m: SparseTensor, v: SparseTensor) -> SparseTensor:
    return einsum("ij,j->i", m, v)


def compose(f: SparseTensor, g: SparseTensor) -> SparseTensor:
    """``f o g``."""
    return einsum("ij,jk->ik", f, g)


def transpose(m: SparseTensor) -> SparseTensor:
    return permute_legs(m, (1, 0))


def kron(f: SparseTensor, g: SparseTensor) -> SparseTensor:
    """``f (x) g`` as a map on the fused space (row-major)."""
    t = einsum("ab,cd->acbd", f, g)
    return fuse_legs(t, [(0, 1), (2, 3)])


def vector_from(values: Sequence) -> SparseTensor:
    return SparseTensor.vector(values)
