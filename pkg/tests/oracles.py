"""Independent reference computations used by the tests.

Ranks and characteristic polynomials here come from sympy's exact
``DomainMatrix`` over QQ_I, so they share no code with the package.
"""

import random
from fractions import Fraction

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from jordanq.scalar import GaussianRational


def to_qqi(z):
    re, im = Fraction(z.re), Fraction(z.im)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def from_qqi(z):
    return GaussianRational(
        Fraction(int(z.x.numerator), int(z.x.denominator)),
        Fraction(int(z.y.numerator), int(z.y.denominator)),
    )


def to_domain(A):
    return DomainMatrix([[to_qqi(x) for x in A.row(i)] for i in range(A.rows)], A.shape, QQ_I)


def shifted_power_ranks(A, lam, upto):
    """``[rank((A - lam)^k) for k in 0..upto]`` computed by sympy."""
    n = A.rows
    B = to_domain(A) - DomainMatrix.eye(n, QQ_I) * to_qqi(lam)
    ranks = [n]
    P = DomainMatrix.eye(n, QQ_I)
    for _ in range(upto):
        P = P * B
        ranks.append(P.rank())
    return ranks


def oracle_structure(A, eigenvalues):
    """Block sizes per eigenvalue from rank differences of powers.

    Blocks of size exactly ``k`` number ``rank^{k-1} - 2 rank^k + rank^{k+1}``.
    """
    n = A.rows
    out = {}
    for lam in eigenvalues:
        r = shifted_power_ranks(A, lam, n + 1)
        sizes = []
        for k in range(n, 0, -1):
            sizes.extend([k] * (r[k - 1] - 2 * r[k] + r[k + 1]))
        out[lam] = sizes
    return out


def oracle_char_poly(A):
    """Coefficients lowest degree first, as GaussianRational."""
    coeffs = to_domain(A).charpoly()
    return [from_qqi(c) for c in reversed(coeffs)]


# test-case structures ---------------------------------------------------------

EIGEN_POOL = [
    GaussianRational(0),
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(2),
    GaussianRational(-3),
    GaussianRational(Fraction(1, 2)),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(1, 1),
    GaussianRational(2, -1),
    GaussianRational(Fraction(-1, 2), Fraction(3, 2)),
]


def partitions(m, largest=None):
    """Partitions of ``m`` as descending lists."""
    largest = m if largest is None else largest
    if m == 0:
        yield []
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield [first] + rest


def random_partition(m, rng):
    parts = []
    while m:
        k = rng.randint(1, m)
        parts.append(k)
        m -= k
    return sorted(parts, reverse=True)


def random_structure(seed, size=None, pool=EIGEN_POOL, max_distinct=3):
    """Structure ``{lam: sizes}`` of total ``size`` (1..10 chosen from seed)."""
    rng = random.Random(seed)
    n = size if size is not None else 1 + seed % 10
    d = rng.randint(1, min(max_distinct, n))
    lams = rng.sample(pool, d)
    cuts = sorted(rng.sample(range(1, n), d - 1))
    mults = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    return {lam: random_partition(m, rng) for lam, m in zip(lams, mults)}


def structure_strings(structure):
    from jordanq.scalar import format_scalar

    return {format_scalar(lam): sorted(s, reverse=True) for lam, s in sorted(structure.items())}
