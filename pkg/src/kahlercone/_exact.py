"""Exact scalars: rationals (gmpy2.mpq) and Gaussian rationals.

Every exact code path in the package goes through :func:`rational` so that
ints, ``Fraction``, ``"p/q"`` strings and ``mpq`` values mix freely.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)

_MPQ = type(mpq(0))


class ExactnessError(TypeError):
    """Raised when a floating value reaches an exact-only code path."""


def rational(x) -> mpq:
    """Coerce ``x`` to an exact rational.

    Accepts ints, ``Fraction``, ``mpq``, and strings such as ``"3"``,
    ``"-7/4"`` or ``"0.25"`` (decimal strings are read exactly).
    Floats are refused: silently rationalising 0.1 is never what a caller
    of an exact routine wants.
    """
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if type(x).__name__ == "mpz":
        return mpq(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        if "/" in s:
            num, den = s.split("/", 1)
            return mpq(int(num.strip()), int(den.strip()))
        return mpq(Fraction(s).numerator, Fraction(s).denominator)
    raise ExactnessError(f"cannot use {x!r} ({type(x).__name__}) as an exact rational")


def is_rational_like(x) -> bool:
    if isinstance(x, (float, complex)):
        return False
    try:
        rational(x)
    except (ExactnessError, ValueError):
        return False
    return True


class GaussRat:
    """A Gaussian rational ``re + i*im`` with ``mpq`` parts.

    Only built when the imaginary part is nonzero; arithmetic collapses
    back to a plain ``mpq`` whenever it can, which keeps real-symmetric
    inputs on the fast path.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = rational(re)
        self.im = rational(im)

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussRat):
            return x.re, x.im
        return rational(x), ZERO

    def __add__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        return make_complex(self.re + a, self.im + b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        return make_complex(self.re - a, self.im - b)

    def __rsub__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        return make_complex(a - self.re, b - self.im)

    def __mul__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        return make_complex(self.re * a - self.im * b, self.re * b + self.im * a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        den = a * a + b * b
        if den == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return make_complex((self.re * a + self.im * b) / den, (self.im * a - self.re * b) / den)

    def __rtruediv__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        den = self.re * self.re + self.im * self.im
        return make_complex((a * self.re + b * self.im) / den, (b * self.re - a * self.im) / den)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __eq__(self, other):
        try:
            a, b = GaussRat._parts(other)
        except (ExactnessError, ValueError):
            return NotImplemented
        return self.re == a and self.im == b

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def make_complex(re, im):
    """Build an exact complex scalar, collapsing to ``mpq`` when real."""
    if im == 0:
        return re
    return GaussRat(re, im)


def exact_scalar(x):
    """Coerce a real rational or a ``(re, im)`` pair to an exact scalar."""
    if isinstance(x, GaussRat):
        return make_complex(x.re, x.im)
    if isinstance(x, (tuple, list)):
        if len(x) != 2:
            raise ValueError(f"complex literal must be [re, im], got {x!r}")
        return make_complex(rational(x[0]), rational(x[1]))
    return rational(x)


def conj(x):
    return x.conjugate() if isinstance(x, GaussRat) else x


def real_part(x):
    return x.re if isinstance(x, GaussRat) else x


def imag_part(x):
    return x.im if isinstance(x, GaussRat) else ZERO


def to_complex(x) -> complex:
    if isinstance(x, (GaussRat, complex)):
        return complex(x)
    return complex(float(x))


def format_rational(q) -> str:
    """``"p/q"`` (or ``"p"``) for exact values; fixed 12-digit floats otherwise."""
    if isinstance(q, GaussRat):
        return str(q)
    if isinstance(q, float):
        return format_float(q)
    q = rational(q)
    return str(q)


def format_float(x: float) -> str:
    if x == 0:
        x = 0.0  # no "-0"
    return f"{x:.12g}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


__all__ = [
    "ZERO",
    "ONE",
    "ExactnessError",
    "GaussRat",
    "conj",
    "exact_scalar",
    "format_float",
    "format_rational",
    "gmpy2",
    "imag_part",
    "is_rational_like",
    "make_complex",
    "mpq",
    "rational",
    "real_part",
    "sign",
    "to_complex",
]
