"""Characteristic polynomials and eigenvalues that lie in Q(i).

Roots are found exactly: rational-root search on the cleared-denominator
polynomial, the Gaussian-integer analogue of that search when needed, and
the quadratic formula with an exact square root for the last two roots.
Anything that does not split over Q(i) is reported as
:class:`RequiresEigenvalueHint`, never approximated.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from .errors import InvalidHint, RequiresEigenvalueHint
from .linalg import ExactMatrix, rank
from .scalar import ONE, ZERO, GaussianRational, format_scalar, sqrt_exact, to_scalar

__all__ = [
    "Polynomial",
    "EigenvalueReport",
    "char_poly",
    "find_eigenvalues",
    "verify_eigenvalue",
    "algebraic_multiplicity",
    "split_polynomial",
]


class Polynomial:
    """Polynomial with Gaussian rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [to_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_minus(cls, root):
        return cls([-to_scalar(root), ONE])

    @classmethod
    def from_roots(cls, roots):
        p = cls([ONE])
        for r in roots:
            p = p * cls.x_minus(r)
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return self.leading == ONE

    def is_real(self):
        return all(c.im == 0 for c in self.coeffs)

    def monic(self):
        lead = self.leading.inverse()
        return Polynomial([c * lead for c in self.coeffs])

    def __call__(self, x):
        x = to_scalar(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, A):
        """Horner evaluation with matrix argument."""
        n = A.rows
        acc = ExactMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            acc = (acc @ A).shift(-c)
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return Polynomial(
            (a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(m)
        )

    def __sub__(self, other):
        return self + Polynomial([-c for c in other.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_scalar(other)
            return Polynomial([c * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Polynomial([ONE])
        for _ in range(k):
            result = result * self
        return result

    def divide_linear(self, root):
        """Synthetic division by ``x - root``: ``(quotient, remainder)``."""
        root = to_scalar(root)
        if self.degree < 1:
            return Polynomial(), self(root)
        q = []
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * root + c
            q.append(acc)
        remainder = q.pop()
        return Polynomial(reversed(q)), remainder

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[format_scalar(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c.im == 0:
                neg = c.re < 0
                mag = format_scalar(-c if neg else c)
                if mono and mag == "1":
                    mag = ""
                body = mag + mono
            else:
                neg = False
                body = f"({format_scalar(c)})" + mono
            if not terms:
                terms.append(("-" if neg else "") + body)
            else:
                terms.append(("- " if neg else "+ ") + body)
        return " ".join(terms)


def char_poly(A):
    """Monic characteristic polynomial ``det(xI - A)`` by Faddeev-LeVerrier.

    With ``M_0 = 0`` and ``c_n = 1``: ``M_k = A M_{k-1} + c_{n-k+1} I`` and
    ``c_{n-k} = -trace(A M_k) / k``.
    """
    if not A.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = A.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    AM = ExactMatrix.zeros(n, n)  # A M_{k-1}
    for k in range(1, n + 1):
        M = AM.shift(-coeffs[n - k + 1])
        AM = A @ M
        trace = ZERO
        for i in range(n):
            trace = trace + AM[i, i]
        coeffs[n - k] = -trace / k
    return Polynomial(coeffs)


# root search ----------------------------------------------------------------


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _lcm(a, b):
    return a * b // gcd(a, b)


def _integer_coefficients(poly):
    """Scale ``poly`` so every real and imaginary part is an integer.

    Returns a list of ``(re, im)`` integer pairs.
    """
    den = 1
    for c in poly.coeffs:
        den = _lcm(den, int(c.re.denominator))
        den = _lcm(den, int(c.im.denominator))
    out = [(int(c.re * den), int(c.im * den)) for c in poly.coeffs]
    g = 0
    for a, b in out:
        g = gcd(g, gcd(a, b))
    if g > 1:
        out = [(a // g, b // g) for a, b in out]
    return out


def _height(z):
    return max(max(abs(int(p.numerator)), int(p.denominator)) for p in (z.re, z.im))


def _rational_candidates(poly):
    ints = [a for a, _ in _integer_coefficients(poly)]
    lead, const = ints[-1], ints[0]
    seen = set()
    out = []
    for p in _divisors(const):
        for q in _divisors(lead):
            for s in (1, -1):
                z = GaussianRational(Fraction(s * p, q))
                if z not in seen:
                    seen.add(z)
                    out.append(z)
    out.sort(key=lambda z: (_height(z), z))
    return out


def _sum_of_two_squares(p):
    for a in range(1, isqrt(p) + 1):
        b2 = p - a * a
        b = isqrt(b2)
        if b * b == b2:
            return a, b
    raise ValueError(f"{p} is not a sum of two squares")


def _prime_factors(n):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _gdivides(z, w):
    """Gaussian integer division ``w / z`` if exact, else None."""
    q = GaussianRational(w[0], w[1]) / GaussianRational(z[0], z[1])
    if q.re.denominator == 1 and q.im.denominator == 1:
        return (int(q.re), int(q.im))
    return None


def _gaussian_divisors(z):
    """All divisors of the nonzero Gaussian integer ``z`` up to units."""
    a, b = z
    primes = []
    for p in _prime_factors(a * a + b * b):
        if p == 2:
            primes.append((1, 1))
        elif p % 4 == 1:
            u, v = _sum_of_two_squares(p)
            primes.extend([(u, v), (u, -v)])
        else:
            primes.append((p, 0))
    powers = []
    for pi in primes:
        e, w = 0, z
        while True:
            q = _gdivides(pi, w)
            if q is None:
                break
            w, e = q, e + 1
        if e:
            powers.append((pi, e))
    divisors = []
    for exps in product(*[range(e + 1) for _, e in powers]):
        d = ONE
        for (pi, _), k in zip(powers, exps):
            d = d * GaussianRational(pi[0], pi[1]) ** k
        divisors.append(d)
    return divisors


_UNITS = (ONE, -ONE, GaussianRational(0, 1), GaussianRational(0, -1))


def _gaussian_candidates(poly):
    ints = _integer_coefficients(poly)
    nums = _gaussian_divisors(ints[0])
    dens = _gaussian_divisors(ints[-1])
    seen = set()
    out = []
    for p in nums:
        for q in dens:
            base = p / q
            for u in _UNITS:
                z = base * u
                if z not in seen:
                    seen.add(z)
                    out.append(z)
    out.sort(key=lambda z: (_height(z), z))
    return out


def _find_root(poly):
    if poly.is_real():
        for z in _rational_candidates(poly):
            if not poly(z):
                return z
    for z in _gaussian_candidates(poly):
        if not poly(z):
            return z
    return None


def split_polynomial(poly):
    """All roots of ``poly`` in Q(i), with repetition, in ascending order.

    Raises :class:`RequiresEigenvalueHint` naming the factor that does not
    split.
    """
    if poly.is_zero():
        raise ValueError("zero polynomial has no finite root list")
    p = poly.monic()
    roots = []
    while p.degree > 0 and not p.coeffs[0]:
        roots.append(ZERO)
        p = Polynomial(p.coeffs[1:])
    while p.degree > 0:
        if p.degree == 1:
            roots.append(-p.coeffs[0])
            break
        if p.degree == 2:
            c, b = p.coeffs[0], p.coeffs[1]
            s = sqrt_exact(b * b - 4 * c)
            if s is None:
                raise RequiresEigenvalueHint(
                    f"factor {p} has no roots in Q(i); supply eigenvalue hints", p
                )
            roots.extend([(-b + s) / 2, (-b - s) / 2])
            break
        r = _find_root(p)
        if r is None:
            raise RequiresEigenvalueHint(
                f"factor {p} has no roots in Q(i); supply eigenvalue hints", p
            )
        while True:
            q, rem = p.divide_linear(r)
            if rem:
                break
            roots.append(r)
            p = q
    return sorted(roots)


# eigenvalues ----------------------------------------------------------------


@dataclass
class EigenvalueReport:
    """Distinct eigenvalues with algebraic multiplicities, in ascending order.

    ``residual`` is the unsplit factor of the characteristic polynomial when
    ``complete`` is false.
    """

    eigenvalues: list
    complete: bool
    char_poly: Polynomial = None
    residual: Polynomial = None
    multiplicities: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.multiplicities = dict(self.eigenvalues)

    @property
    def values(self):
        return [lam for lam, _ in self.eigenvalues]


def verify_eigenvalue(A, lam):
    if not A.is_square():
        raise ValueError("eigenvalue of a non-square matrix")
    return rank(A.shift(lam)) < A.rows


def algebraic_multiplicity(A, lam):
    """``n - rank((A - lam)^k)`` once the ranks stop decreasing."""
    n = A.rows
    B = A.shift(lam)
    power, prev = B, n
    while True:
        r = rank(power)
        if r == prev:
            return n - r
        prev = r
        power = power @ B


def _group(roots):
    out = []
    for r in roots:
        if out and out[-1][0] == r:
            out[-1][1] += 1
        else:
            out.append([r, 1])
    return [(r, m) for r, m in out]


def find_eigenvalues(A, hints=None):
    """Distinct eigenvalues of ``A`` inside Q(i).

    Without hints the characteristic polynomial must split completely over
    Q(i), otherwise :class:`RequiresEigenvalueHint` is raised.  Each hint is
    checked (:class:`InvalidHint` if it is not an eigenvalue) and the rest of
    the polynomial is searched as usual; if that remainder does not split,
    the report comes back with ``complete=False``.
    """
    if not A.is_square():
        raise ValueError("eigenvalues of a non-square matrix")
    n = A.rows
    p = char_poly(A)
    if n == 0:
        return EigenvalueReport([], True, p)
    if hints is None:
        return EigenvalueReport(_group(split_polynomial(p)), True, p)

    found = {}
    for h in hints:
        lam = to_scalar(h)
        if lam in found:
            continue
        if not verify_eigenvalue(A, lam):
            raise InvalidHint(f"{format_scalar(lam)} is not an eigenvalue")
        found[lam] = algebraic_multiplicity(A, lam)
    rest = p
    for lam, m in found.items():
        for _ in range(m):
            rest, rem = rest.divide_linear(lam)
            if rem:
                raise AssertionError("hint multiplicity disagrees with the characteristic polynomial")
    residual = None
    try:
        if rest.degree > 0:
            for lam, m in _group(split_polynomial(rest)):
                found[lam] = found.get(lam, 0) + m
    except RequiresEigenvalueHint as exc:
        residual = exc.polynomial
    eigenvalues = sorted(found.items())
    complete = sum(m for _, m in eigenvalues) == n
    return EigenvalueReport(eigenvalues, complete, p, residual)
