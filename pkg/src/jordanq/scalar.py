"""Exact arithmetic over the Gaussian rationals Q(i).

Real and imaginary parts are ``gmpy2.mpq`` rationals.  An ``mpq`` is always
reduced with a positive denominator, so equal scalars have identical parts
and equality is structural.
"""

from fractions import Fraction
from functools import total_ordering

import gmpy2
from gmpy2 import mpq

from .errors import ParseError

__all__ = [
    "Rational",
    "GaussianRational",
    "ZERO",
    "ONE",
    "I",
    "add",
    "mul",
    "inv",
    "parse_scalar",
    "format_scalar",
    "rational_sqrt",
    "sqrt_exact",
    "to_scalar",
]

Rational = mpq
_MPQ = type(mpq(0))
_EXACT = (int, Fraction, _MPQ, type(gmpy2.mpz(0)))


def _q(x):
    if type(x) is _MPQ:
        return x
    if isinstance(x, _EXACT):
        return mpq(int(x)) if isinstance(x, bool) else mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _new(re, im):
    z = object.__new__(GaussianRational)
    z.re = re
    z.im = im
    return z


@total_ordering
class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Instances are treated as immutable.  Ordering is lexicographic on
    ``(re, im)``; it carries no field meaning and only exists so that
    eigenvalues can be sorted deterministically.

    >>> GaussianRational(Fraction(1, 2), 3) * GaussianRational(0, 1)
    GaussianRational('-3+1/2i')
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return _new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return _new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _new(a * c, b)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("inverse of zero in Q(i)")
            return _new(1 / a, b)
        n = a * a + b * b
        return _new(a / n, -b / n)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if not other.im and not self.im:
            if not other.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return _new(self.re / other.re, self.im)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
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

    def conjugate(self):
        return _new(self.re, -self.im)

    def norm(self):
        """Field norm ``re**2 + im**2`` (a rational)."""
        return self.re * self.re + self.im * self.im

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, _EXACT):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __lt__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return (self.re, self.im) < (other.re, other.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    # display ------------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"GaussianRational({format_scalar(self)!r})"

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, _EXACT):
        return _new(_q(x), _ZQ)
    return NotImplemented


def to_scalar(x):
    """Convert an int, rational, scalar string or GaussianRational."""
    if type(x) is GaussianRational:
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    z = _coerce(x)
    if z is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to a Gaussian rational")
    return z


_ZQ = mpq(0)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def add(a, b):
    return to_scalar(a) + to_scalar(b)


def mul(a, b):
    return to_scalar(a) * to_scalar(b)


def inv(a):
    return to_scalar(a).inverse()


# text form ----------------------------------------------------------------


def _format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(a):
    """Canonical text: ``5``, ``-3/7``, ``1/2+1/3i``, ``-1i``."""
    re, im = a.re, a.im
    if not im:
        return _format_rational(re)
    if not re:
        return _format_rational(im) + "i"
    sign = "+" if im > 0 else "-"
    return f"{_format_rational(re)}{sign}{_format_rational(abs(im))}i"


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def fail(self, message):
        raise ParseError(message, self.text, self.pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def digits(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if self.pos == start:
            self.fail("expected digit")
        return int(self.text[start:self.pos])

    def rational(self, signed):
        negative = False
        if signed and self.peek() == "-":
            negative = True
            self.pos += 1
        num = self.digits()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            where = self.pos
            den = self.digits()
            if den == 0:
                self.pos = where
                self.fail("zero denominator")
        value = mpq(num, den)
        return -value if negative else value


def parse_scalar(text):
    """Parse the grammar ``R | R SIGN R'i' | R'i'`` with ``R = ['-']digits['/'digits]``.

    Raises :class:`ParseError` carrying the offending position.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a scalar string, got {type(text).__name__}")
    r = _Reader(text)
    first = r.rational(signed=True)
    c = r.peek()
    if c == "":
        return _new(first, _ZQ)
    if c == "i":
        r.pos += 1
        if r.peek() != "":
            r.fail("unexpected trailing input")
        return _new(_ZQ, first)
    if c in "+-":
        r.pos += 1
        second = r.rational(signed=False)
        if r.peek() != "i":
            r.fail("expected 'i'")
        r.pos += 1
        if r.peek() != "":
            r.fail("unexpected trailing input")
        return _new(first, second if c == "+" else -second)
    r.fail(f"unexpected character {c!r}")


# square roots -------------------------------------------------------------


def rational_sqrt(q):
    """Exact square root of a non-negative rational, or None."""
    q = _q(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if not (gmpy2.is_square(n) and gmpy2.is_square(d)):
        return None
    return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))


def sqrt_exact(a):
    """A square root of ``a`` inside Q(i), or None when there is none.

    For ``a = x + yi`` any root ``u + vi`` has ``u**2 = (|a| + x)/2`` and
    ``v**2 = (|a| - x)/2``, so ``|a|`` must itself be rational.
    """
    a = to_scalar(a)
    x, y = a.re, a.im
    if not y:
        if x >= 0:
            r = rational_sqrt(x)
            return None if r is None else _new(r, _ZQ)
        r = rational_sqrt(-x)
        return None if r is None else _new(_ZQ, r)
    m = rational_sqrt(a.norm())
    if m is None:
        return None
    u = rational_sqrt((m + x) / 2)
    v = rational_sqrt((m - x) / 2)
    if u is None or v is None:
        return None
    return _new(u, -v if y < 0 else v)
