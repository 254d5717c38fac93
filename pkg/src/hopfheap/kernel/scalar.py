"""Exact scalars in Q or a quadratic extension Q(sqrt(d)).

A :class:`Scalar` is ``a + b*sqrt(d)`` with rational ``a`` and ``b``.  The
canonical form stores ``d = None`` exactly when ``b == 0``, so the rational
number 3 compares equal to 3 regarded as an element of any extension.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..errors import FieldMismatch, ParseError, ZeroInverse


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _square_free(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: Q when ``d`` is None, else Q(sqrt(d))."""

    d: int | None = None

    def __post_init__(self):
        d = self.d
        if d is None:
            return
        if not isinstance(d, int) or d == 0 or _is_square(d) or not _square_free(d):
            raise FieldMismatch(f"sqrt({d}) does not generate a quadratic extension")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        s = text.strip().replace(" ", "")
        if s == "Q":
            return cls(None)
        m = re.fullmatch(r"Q\(sqrt:(-?\d+)\)", s)
        if not m:
            raise ParseError("bad field specification", token=text)
        return cls(int(m.group(1)))

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt:{self.d})"

    def contains(self, s: Scalar) -> bool:
        return s.d is None or s.d == self.d

    def check(self, s: Scalar) -> Scalar:
        if not self.contains(s):
            raise FieldMismatch(f"{s} does not lie in {self}")
        return s

    def __contains__(self, s: Scalar) -> bool:
        return self.contains(s)


class Scalar:
    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if b == 0:
            d = None
        elif d is None:
            raise FieldMismatch("irrational part given without a radicand")
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d):
        s = object.__new__(cls)
        if not b:
            d = None
        s.a, s.b, s.d = a, b, d
        return s

    @staticmethod
    def coerce(x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar._make(Fraction(x), Fraction(0), None)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot make a scalar from {type(x).__name__}")

    @staticmethod
    def sqrt(d: int) -> Scalar:
        """The generator ``sqrt(d)`` of Q(sqrt(d))."""
        FieldSpec(d)
        return Scalar._make(Fraction(0), Fraction(1), d)

    def _radicand(self, other: Scalar):
        if self.d is None:
            return other.d
        if other.d is None or other.d == self.d:
            return self.d
        raise FieldMismatch(f"sqrt({self.d}) and sqrt({other.d}) mixed")

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar._make(self.a + other, self.b, self.d)
            return NotImplemented
        if self.d is None and other.d is None:
            return Scalar._make(self.a + other.a, Fraction(0), None)
        return Scalar._make(self.a + other.a, self.b + other.b, self._radicand(other))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(-self.a, -self.b, self.d)

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar._make(self.a * other, self.b * other, self.d)
            return NotImplemented
        if self.d is None:
            if other.d is None:
                return Scalar._make(self.a * other.a, Fraction(0), None)
            return Scalar._make(self.a * other.a, self.a * other.b, other.d)
        if other.d is None:
            return Scalar._make(self.a * other.a, self.b * other.a, self.d)
        d = self._radicand(other)
        return Scalar._make(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conj(self) -> Scalar:
        return Scalar._make(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        if self.d is None:
            return self.a * self.a
        return self.a * self.a - self.d * self.b * self.b

    def inv(self) -> Scalar:
        if not self:
            raise ZeroInverse("zero has no inverse")
        n = self.norm()
        return Scalar._make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self * Scalar.coerce(other).inv()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison and hashing

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def sort_key(self):
        return (self.a, self.b)

    def is_rational(self) -> bool:
        return not self.b

    # text form

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text: ``p``, ``p/q``, ``r/s*sqrt(d)`` or ``p/q+r/s*sqrt(d)``."""
    if s.d is None:
        return _fmt_rational(s.a)
    irr = f"{_fmt_rational(s.b)}*sqrt({s.d})"
    if not s.a:
        return irr
    sign = "+" if s.b > 0 else ""
    return f"{_fmt_rational(s.a)}{sign}{irr}"


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?:(?P<a>{_RAT})(?=$|[+-]))?"
    rf"(?:(?P<b>[+-]?(?:\d+(?:/\d+)?)?)\*?sqrt\((?P<d>-?\d+)\))?$"
)


def _parse_rational(tok: str, text: str) -> Fraction:
    if "/" in tok:
        num, den = tok.split("/")
        if int(den) == 0:
            raise ParseError("zero denominator", token=text)
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def parse_scalar(text: str, field: FieldSpec | None = None) -> Scalar:
    """Parse a scalar string; accepts canonical forms plus ``sqrt(d)`` shorthands."""
    if not isinstance(text, str):
        raise ParseError("scalar must be a string", token=repr(text))
    s = text.strip().replace(" ", "")
    m = _SCALAR_RE.match(s) if s else None
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ParseError("malformed scalar", token=text)
    a = _parse_rational(m.group("a"), text) if m.group("a") else Fraction(0)
    b = Fraction(0)
    d = None
    if m.group("d") is not None:
        btok = m.group("b")
        if btok in ("", "+"):
            b = Fraction(1)
        elif btok == "-":
            b = Fraction(-1)
        else:
            b = _parse_rational(btok, text)
        d = int(m.group("d"))
        try:
            FieldSpec(d)
        except FieldMismatch as exc:
            raise ParseError(str(exc), token=text) from None
    out = Scalar(a, b, d)
    if field is not None and not field.contains(out):
        raise FieldMismatch(f"scalar {text!r} outside field {field}")
    return out


def scalar_inv(s: Scalar, field: FieldSpec | None = None) -> Scalar:
    if field is not None:
        field.check(s)
    return s.inv()
