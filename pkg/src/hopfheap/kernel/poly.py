"""Roots in Q(sqrt(d)) of univariate polynomials with coefficients there.

The norm ``p * conj(p)`` has rational coefficients; its irreducible factors
over Q (computed with sympy) of degree one or two produce every candidate root
that lies in the quadratic field.  Candidates are then checked exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

import sympy

from .scalar import ZERO, FieldSpec, Scalar


def poly_eval(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_mul(p: Sequence[Scalar], q: Sequence[Scalar]) -> list[Scalar]:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def roots_in_field(coeffs: Sequence[Scalar], field: FieldSpec) -> list[Scalar]:
    """Distinct roots of ``sum coeffs[k] t^k`` lying in ``field``, sorted."""
    coeffs = [Scalar.coerce(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    for c in coeffs:
        field.check(c)
    norm = poly_mul(coeffs, [c.conj() for c in coeffs])
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(c.a.numerator, c.a.denominator) * t**k for k, c in enumerate(norm))
    _, factors = sympy.factor_list(sympy.Poly(expr, t, domain="QQ"))
    candidates = set()
    for fac, _mult in factors:
        fc = [Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in reversed(fac.all_coeffs())]
        if len(fc) == 2:
            candidates.add(Scalar(-fc[0] / fc[1]))
        elif len(fc) == 3 and field.d is not None:
            beta, gamma = fc[1] / fc[2], fc[0] / fc[2]
            disc = beta * beta - 4 * gamma
            s = _rational_sqrt(disc / field.d)
            if s is not None:
                for sign in (1, -1):
                    candidates.add(Scalar(-beta / 2, sign * s / 2, field.d))
    roots = [r for r in candidates if not poly_eval(coeffs, r)]
    return sorted(roots, key=Scalar.sort_key)
