"""Exact linear algebra over Q(sqrt(d)) by Gauss-Jordan elimination."""

from __future__ import annotations

from typing import Sequence

from ..errors import DimMismatch, Singular
from .scalar import ONE, ZERO, Scalar
from .tensor import SparseTensor


def to_dense(m: SparseTensor) -> list[list[Scalar]]:
    if m.arity != 2:
        raise DimMismatch(f"expected a matrix, got arity {m.arity}")
    rows, cols = m.dims
    out = [[ZERO] * cols for _ in range(rows)]
    for (i, j), v in m.items():
        out[i][j] = v
    return out


def from_dense(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> SparseTensor:
    ncols = len(rows[0]) if rows else (ncols or 0)
    return SparseTensor((len(rows), ncols), {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Pivots are taken as the first nonzero entry scanning rows top-down, so the
    result depends only on the input matrix.
    """
    a = [list(r) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inv()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m: SparseTensor) -> int:
    return len(rref(to_dense(m), m.dims[1])[1])


def _null_vectors(rows, ncols: int) -> list[list[Scalar]]:
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def kernel_basis(m: SparseTensor) -> list[SparseTensor]:
    """Basis of the null space, one vector per free column, in column order."""
    rows = to_dense(m)
    return [SparseTensor.vector(v) for v in _null_vectors(rows, m.dims[1])]


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], ncols: int):
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


def solve_with_nullity(rows, rhs, ncols: int):
    """Like :func:`solve` but also return the dimension of the solution space."""
    x = solve(rows, rhs, ncols)
    if x is None:
        return None, 0
    _, pivots = rref(rows, ncols)
    return x, ncols - len(pivots)


def matrix_inverse(m: SparseTensor) -> SparseTensor:
    n, k = m.dims
    if n != k:
        raise DimMismatch(f"cannot invert a {n}x{k} matrix")
    rows = to_dense(m)
    aug = [r + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise Singular(f"matrix has rank {len([p for p in pivots if p < n])} < {n}")
    return from_dense([r[n:] for r in red])


def coordinates(basis: Sequence[SparseTensor], v: SparseTensor) -> list[Scalar] | None:
    """Coefficients of ``v`` in the span of ``basis`` (None if outside)."""
    if not basis:
        return [] if v.is_zero() else None
    n = basis[0].dims[0]
    cols = [b.to_list() for b in basis]
    rows = [[cols[j][i] for j in range(len(basis))] for i in range(n)]
    return solve(rows, v.to_list(), len(basis))


def charpoly(m: SparseTensor) -> list[Scalar]:
    """Coefficients ``[c0, c1, ..., cn]`` of ``det(t I - M)`` (Faddeev-LeVerrier)."""
    a = to_dense(m)
    n = len(a)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- A*mk + c_{n-k+1} I
        prod = [[sum((a[i][l] * mk[l][j] for l in range(n)), ZERO) for j in range(n)] for i in range(n)]
        c = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] = prod[i][i] + c
        mk = prod
        am = [[sum((a[i][l] * mk[l][j] for l in range(n)), ZERO) for j in range(n)] for i in range(n)]
        tr = sum((am[i][i] for i in range(n)), ZERO)
        coeffs[n - k] = -tr / k
    return coeffs
