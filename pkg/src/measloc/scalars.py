"""Exact scalars: rationals and Gaussian rationals.

Real values are kept as :class:`fractions.Fraction`; a value with a
nonzero imaginary part is a :class:`GaussianRational`.  Arithmetic between
the two always collapses back to ``Fraction`` when the imaginary part
vanishes, so equality is structural and exact.
"""

from __future__ import annotations

import re
from fractions import Fraction


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re_part, im_part=0):
        object.__setattr__(self, "re", Fraction(re_part))
        object.__setattr__(self, "im", Fraction(im_part))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _parts(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return make(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return make(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussianRational(*p) / self

    def __neg__(self):
        return make(-self.re, -self.im)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return make(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = "Fraction | GaussianRational"


def make(re_part, im_part=0):
    """Build a scalar, collapsing to Fraction when the imaginary part is 0."""
    if im_part == 0:
        return Fraction(re_part)
    return GaussianRational(re_part, im_part)


def scalar(x):
    """Coerce ints, Fractions, Gaussian rationals, (re, im) pairs or strings."""
    if isinstance(x, GaussianRational):
        return make(x.re, x.im)
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, tuple) and len(x) == 2:
        return make(x[0], x[1])
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def real_part(x):
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x):
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def is_real(x):
    return not isinstance(x, GaussianRational) or x.im == 0


def conj(x):
    return x.conjugate() if isinstance(x, GaussianRational) else x


def abs2(x):
    """Squared modulus, an exact nonnegative rational."""
    r, i = real_part(x), imag_part(x)
    return r * r + i * i


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?P<im>[+-](?:\d+(?:/\d+)?)?i)?|(?P<pim>[+-]?(?:\d+(?:/\d+)?)?i))\s*$"
)


def _imag_coeff(text):
    body = text[:-1]
    if body in ("", "+"):
        return Fraction(1)
    if body == "-":
        return Fraction(-1)
    return Fraction(body)


def parse_scalar(text):
    """Parse ``3``, ``-1/2``, ``1/2+3/4i``, ``2i`` or ``-i``."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not an exact scalar: {text!r}")
    if m.group("pim") is not None:
        return make(0, _imag_coeff(m.group("pim")))
    re_part = Fraction(m.group("re"))
    im_part = _imag_coeff(m.group("im")) if m.group("im") else Fraction(0)
    return make(re_part, im_part)


def format_scalar(x):
    r, i = real_part(x), imag_part(x)
    if i == 0:
        return str(r)
    if r == 0:
        return f"{i}i"
    sign = "+" if i > 0 else "-"
    return f"{r}{sign}{abs(i)}i"
