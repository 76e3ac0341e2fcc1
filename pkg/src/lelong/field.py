"""Exact arithmetic over Q and Q(i), plus the numeric fallback used for
points whose coordinates leave Q(i).

Rationals are plain :class:`fractions.Fraction`.  Gaussian rationals are
immutable pairs of fractions.  Numeric values are ``mpmath.mpc`` computed at
:data:`PREC` bits; every numeric section should run under
``mpmath.workprec(PREC)``.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational as _RationalABC

import mpmath

#: working precision (bits) for inexact geometry
PREC = 256

# Numeric intersection points flow through ordinary arithmetic operators, so the
# global mpmath context must carry the working precision.
if mpmath.mp.prec < PREC:
    mpmath.mp.prec = PREC


def precision() -> int:
    """Current working precision (bits) for numeric fallbacks."""
    return PREC


def set_precision(bits: int) -> None:
    global PREC
    if bits < 64:
        raise ValueError("precision must be at least 64 bits")
    PREC = int(bits)
    mpmath.mp.prec = PREC


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                re = re + GaussianRational(0, 1) * GaussianRational.coerce(im)
            self.re, self.im = re.re, re.im
            return
        self.re = to_fraction(re)
        self.im = to_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            re, im = Fraction(x.real), Fraction(x.imag)
            if re.denominator > 1 << 20 or im.denominator > 1 << 20:
                raise TypeError("refusing to coerce a non-dyadic-small float")
            return cls(re, im)
        if isinstance(x, dict):
            return cls(x.get("re", 0), x.get("im", 0))
        return cls(x)

    # arithmetic -------------------------------------------------------------
    def _other(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return _mk(self.re + o.re, _ZERO)
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return _mk(self.re - o.re, _ZERO)
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return _mk(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return _mk(self.re * o.re, _ZERO)
        return _mk(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return _mk(self.re / o.re, _ZERO)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return _mk(1 / self.re, _ZERO)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return _mk(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        return _mk(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparison / hashing ---------------------------------------------------
    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def sort_key(self):
        return (self.re, self.im)

    # conversions ------------------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def _mpmath_(self, prec, rounding):
        with mpmath.workprec(prec):
            return mpmath.mpc(
                mpmath.mpf(self.re.numerator) / self.re.denominator,
                mpmath.mpf(self.im.numerator) / self.im.denominator,
            )

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(to_fraction(obj.get("re", "0")), to_fraction(obj.get("im", "0")))
        return cls(to_fraction(obj))


_ZERO = Fraction(0)


def _mk(re: Fraction, im: Fraction) -> GaussianRational:
    g = GaussianRational.__new__(GaussianRational)
    g.re = re
    g.im = im
    return g


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def qi(x) -> GaussianRational:
    return GaussianRational.coerce(x)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_qi(x) -> GaussianRational | None:
    """Square root in Q(i), or None when x is not a square there.

    The returned root has nonnegative real part, and nonnegative imaginary
    part when the real part is zero.
    """
    x = qi(x)
    a, b = x.re, x.im
    if not b:
        r = _rational_sqrt(a)
        if r is not None:
            return _mk(r, _ZERO)
        r = _rational_sqrt(-a)
        return None if r is None else _mk(_ZERO, r)
    modulus = _rational_sqrt(a * a + b * b)
    if modulus is None:
        return None
    u = _rational_sqrt((a + modulus) / 2)
    if u is None or u == 0:
        return None
    v = b / (2 * u)
    return _mk(u, v)


def to_float(x, precision_bits: int = 53):
    """Nearest floating value of an exact Gaussian rational.

    At 53 bits a Python ``complex`` is returned (raises OverflowError when out
    of range); above that an ``mpmath.mpc`` at the requested precision.
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be at least 53")
    x = qi(x)
    if precision_bits == 53:
        return complex(x.re.numerator / x.re.denominator, x.im.numerator / x.im.denominator)
    return x._mpmath_(precision_bits, "n")


# numeric helpers ----------------------------------------------------------------

def is_exact(x) -> bool:
    return isinstance(x, (GaussianRational, int, Fraction))


def to_mp(x):
    if isinstance(x, GaussianRational):
        return x._mpmath_(PREC, "n")
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def tolerance(scale=1):
    """Absolute threshold below which a numeric value counts as zero."""
    with mpmath.workprec(PREC):
        return mpmath.mpf(2) ** (-(PREC * 3) // 8) * max(mpmath.mpf(1), mpmath.mpf(scale))


def is_zero(x, scale=1) -> bool:
    if is_exact(x):
        return not x
    with mpmath.workprec(PREC):
        return abs(x) <= tolerance(scale)


def snap(x, max_denominator: int = 10**6) -> GaussianRational:
    """Closest Gaussian rational with bounded denominators (no verification)."""
    with mpmath.workprec(PREC):
        z = mpmath.mpc(x)
        re, im = _mpf_to_fraction(z.real), _mpf_to_fraction(z.imag)
    return GaussianRational(re.limit_denominator(max_denominator), im.limit_denominator(max_denominator))


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if not man:
        return Fraction(0)
    f = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -f if sign else f
