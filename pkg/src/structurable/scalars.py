"""Exact scalars: the rationals and quadratic extensions Q(sqrt d).

Rationals are plain ``int`` or :class:`fractions.Fraction` values. Integral
results are kept as ``int`` so the integer fast paths elsewhere stay cheap.
Elements of ``Q(sqrt d)`` are :class:`QuadScalar` values tied to a
:class:`QuadField`; mixing two different fields raises :class:`FieldMismatch`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union


class FieldMismatch(ValueError):
    """Raised when scalars from different quadratic fields are combined."""


class ScalarParseError(ValueError):
    """Raised on malformed scalar text."""


def rational(x) -> Union[int, Fraction]:
    """Normalize an int or Fraction, collapsing integral fractions to int."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return int(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not a rational scalar: {x!r}")


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt d) for a square-free-up-to-squares integer d."""

    d: int

    def __post_init__(self):
        d = Fraction(self.d)
        if d == 0:
            raise ValueError("quadratic parameter d must be nonzero")
        # d is a square in Q iff numerator*denominator is a square in Z
        if _is_square(d.numerator * d.denominator):
            raise ValueError(f"d = {self.d} is a square; Q(sqrt d) would not be a field")
        object.__setattr__(self, "d", rational(d))

    def __call__(self, p=0, q=0) -> "QuadScalar":
        return QuadScalar(p, q, self)

    @property
    def sqrt(self) -> "QuadScalar":
        return QuadScalar(0, 1, self)

    def __repr__(self):
        return f"QuadField({self.d})"


class QuadScalar:
    """The number p + q*sqrt(d) with p, q rational."""

    __slots__ = ("p", "q", "field")

    def __init__(self, p, q, field: QuadField):
        self.p = rational(p)
        self.q = rational(q)
        self.field = field

    def _coerce(self, other):
        if type(other) is QuadScalar:
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.p, other.q
        if isinstance(other, (int, Fraction)):
            return other, 0
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadScalar(self.p + c[0], self.q + c[1], self.field)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadScalar(self.p - c[0], self.q - c[1], self.field)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadScalar(c[0] - self.p, c[1] - self.q, self.field)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        d = self.field.d
        return QuadScalar(self.p * a + d * self.q * b, self.p * b + self.q * a, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadScalar(-self.p, -self.q, self.field)

    def __pos__(self):
        return self

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.p, -self.q, self.field)

    def norm(self):
        """Norm down to Q: p^2 - d q^2."""
        return rational(self.p * self.p - self.field.d * self.q * self.q)

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadScalar(Fraction(self.p) / n, -Fraction(self.q) / n, self.field)

    def __truediv__(self, other):
        if type(other) is QuadScalar:
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadScalar(Fraction(self.p) / other, Fraction(self.q) / other, self.field)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __eq__(self, other):
        if type(other) is QuadScalar:
            return self.field == other.field and self.p == other.p and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.field.d))

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __repr__(self):
        return f"QuadScalar({format_scalar(self)!r}, d={self.field.d})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, QuadScalar]


def conj(x: Scalar) -> Scalar:
    """The nontrivial automorphism of Q(sqrt d); identity on Q."""
    if type(x) is QuadScalar:
        return x.conjugate()
    return x


def norm_to_base(x: Scalar):
    """Field norm to Q (x * conj(x)); for a rational this is x^2."""
    if type(x) is QuadScalar:
        return x.norm()
    return rational(x * x)


def inverse(x: Scalar) -> Scalar:
    if type(x) is QuadScalar:
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return rational(Fraction(1) / x)


def divide(a: Scalar, b: Scalar) -> Scalar:
    if type(a) is QuadScalar or type(b) is QuadScalar:
        return a * inverse(b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    return rational(Fraction(a) / b)


def field_of(x: Scalar):
    """The QuadField of x, or None for rationals."""
    return x.field if type(x) is QuadScalar else None


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)(?:({_RAT})(\*w)?|(w))")


def _parse_rat(s: str):
    if "/" in s:
        n, d = s.split("/")
        if int(d) == 0:
            raise ScalarParseError("zero denominator")
        return rational(Fraction(int(n), int(d)))
    return int(s)


def parse_scalar(text: str, field: QuadField | None = None) -> Scalar:
    """Parse ``p``, ``p/q`` or, over a quadratic field, ``p/q+r/s*w``.

    ``w`` stands for sqrt(d). Whitespace anywhere is ignored. When ``field``
    is given the result is always a QuadScalar.
    """
    s = "".join(text.split())
    if not s:
        raise ScalarParseError("empty scalar")
    pos = 0
    p = 0
    q = 0
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (seen and not m.group(1)):
            raise ScalarParseError(f"cannot parse scalar {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(4):
            q += sign
        elif m.group(3):
            q += sign * _parse_rat(m.group(2))
        else:
            p += sign * _parse_rat(m.group(2))
        seen = True
        pos = m.end()
    if q != 0 and field is None:
        raise ScalarParseError(f"{text!r} uses w but no quadratic field is in scope")
    if field is not None:
        return QuadScalar(p, q, field)
    return rational(p)


def format_scalar(x: Scalar) -> str:
    """Canonical text form, inverse to :func:`parse_scalar`."""
    if type(x) is QuadScalar:
        if x.q == 0:
            return str(x.p)
        if x.q == 1:
            wq = "w"
        elif x.q == -1:
            wq = "-w"
        else:
            wq = f"{x.q}*w"
        if x.p == 0:
            return wq
        return f"{x.p}{wq if wq.startswith('-') else '+' + wq}"
    return str(rational(x))
