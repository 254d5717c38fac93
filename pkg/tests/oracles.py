"""Independent reference computations used to freeze expected values."""

import itertools

import sympy

from hopfheap.kernel import Scalar, SparseTensor


def to_sympy(s: Scalar):
    a = sympy.Rational(s.a.numerator, s.a.denominator)
    if s.d is None or not s.b:
        return a
    return a + sympy.Rational(s.b.numerator, s.b.denominator) * sympy.sqrt(s.d)


def sympy_vector(t: SparseTensor):
    return [to_sympy(c) for c in t.to_list()]


def _in_field(c, d) -> bool:
    re, im = c.as_real_imag()
    if not re.is_rational or not im.is_rational:
        return False
    return im == 0 or d == -1


def grouplikes_by_solve(coalg):
    """Solve Δx = x⊗x, ε(x) = 1 with sympy.solve, keep solutions over Q or Q(i)."""
    n = coalg.dim
    xs = sympy.symbols(f"x0:{n}")
    eqs = [sum(to_sympy(coalg.counit[(i,)]) * xs[i] for i in range(n)) - 1]
    for j, k in itertools.product(range(n), repeat=2):
        lhs = sum(to_sympy(coalg.comul[(i, j, k)]) * xs[i] for i in range(n))
        eqs.append(sympy.expand(lhs - xs[j] * xs[k]))
    out = []
    for sol in sympy.solve(eqs, xs, dict=True):
        coords = [sympy.expand(sol.get(x, x)) for x in xs]
        if all(not c.free_symbols and _in_field(c, coalg.field.d) for c in coords):
            out.append(coords)
    return sorted(out, key=lambda v: [sympy.default_sort_key(c) for c in v])


def descendent_comul_naive(coalg, chi, B):
    """Δ'(a) = [a_1, B(a_4), B(a_2)] ⊗ a_3 by explicit loops over stored entries."""
    D = coalg.comul.entries
    by_source = {}
    for (i, j, k), v in D.items():
        by_source.setdefault(i, []).append((j, k, v))

    def comul_n(a, legs):
        if legs == 1:
            return [((a,), 1)]
        out = []
        for prefix, c in comul_n(a, legs - 1):
            for j, k, v in by_source.get(prefix[-1], []):
                out.append((prefix[:-1] + (j, k), c * v))
        return out

    Bcols = {}
    for (o, i), v in B.entries.items():
        Bcols.setdefault(i, []).append((o, v))
    X = chi.entries
    n = coalg.dim
    result = {}
    for a in range(n):
        for (a1, a2, a3, a4), c in comul_n(a, 4):
            for p, bp in Bcols.get(a4, []):
                for q, bq in Bcols.get(a2, []):
                    for l in range(n):
                        x = X.get((a1, p, q, l))
                        if x:
                            key = (a, l, a3)
                            result[key] = result.get(key, 0) + c * bp * bq * x
    return SparseTensor((n, n, n), result)
