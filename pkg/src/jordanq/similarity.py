"""Similarity via rank sequences, explicit transforms, and Cayley-Hamilton.

Two operators are similar exactly when, for every eigenvalue, the ranks of
the powers ``(A - lam)^k`` agree.  :func:`is_similar` decides this from the
rank sequences alone; :func:`similarity_transform` goes through the full
Jordan decompositions to produce the conjugating matrix.
"""

from dataclasses import dataclass

from .eigen import char_poly, find_eigenvalues
from .errors import NotSimilar, RequiresEigenvalueHint, VerificationFailed
from .jordan import jordan_decompose
from .linalg import ExactMatrix, invert, rank
from .scalar import format_scalar

__all__ = [
    "SimilarityFingerprint",
    "fingerprint",
    "is_similar",
    "similarity_transform",
    "structure_from_fingerprint",
    "cayley_hamilton_check",
]


@dataclass(frozen=True)
class SimilarityFingerprint:
    """Eigenvalue -> ``(dim (A-lam)X, dim (A-lam)^2 X, ...)`` cut at the first repeat."""

    entries: dict
    ambient_dim: int

    def __eq__(self, other):
        if not isinstance(other, SimilarityFingerprint):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.entries.items())))

    def to_json(self):
        return {format_scalar(lam): list(d) for lam, d in self.entries.items()}


def _rank_sequence(A, lam):
    B = A.shift(lam)
    seq = []
    power = B
    while True:
        r = rank(power)
        if seq and seq[-1] == r:
            return tuple(seq)
        seq.append(r)
        if r == 0:
            return tuple(seq)
        power = power @ B


def fingerprint(A, hints=None):
    if not A.is_square():
        raise ValueError("fingerprint of a non-square matrix")
    report = find_eigenvalues(A, hints)
    if not report.complete:
        raise RequiresEigenvalueHint(
            f"eigenvalues not all known; unsplit factor {report.residual}", report.residual
        )
    return SimilarityFingerprint({lam: _rank_sequence(A, lam) for lam in report.values}, A.rows)


def is_similar(A, B, hints_a=None, hints_b=None):
    if A.shape != B.shape:
        return False
    return fingerprint(A, hints_a) == fingerprint(B, hints_b)


def similarity_transform(A, B, hints_a=None, hints_b=None):
    """Invertible ``S`` with ``B S = S A``, or :class:`NotSimilar`."""
    if not is_similar(A, B, hints_a, hints_b):
        raise NotSimilar("rank sequences differ")
    da = jordan_decompose(A, hints_a)
    db = jordan_decompose(B, hints_b)
    if da.J != db.J:
        raise VerificationFailed("similar matrices produced different canonical Jordan forms")
    S = db.P @ invert(da.P)
    if B @ S != S @ A:
        raise VerificationFailed("B S != S A")
    return S


def structure_from_fingerprint(f):
    """Block sizes per eigenvalue, largest first, read off the rank sequence.

    With ``d_0`` the ambient dimension and ``n_k = d_k - d_{k+1}``, there are
    ``n_{k-1} - n_k`` blocks of size exactly ``k``.
    """
    out = {}
    for lam in sorted(f.entries):
        d = [f.ambient_dim] + list(f.entries[lam])
        d.append(d[-1])
        n = [d[k] - d[k + 1] for k in range(len(d) - 1)] + [0]
        sizes = []
        for k in range(len(n) - 1, 0, -1):
            sizes.extend([k] * (n[k - 1] - n[k]))
        out[lam] = sizes
    return out


def cayley_hamilton_check(A, hints=None, decomposition=None):
    """True when both ``prod (A - lam)^m_lam`` and ``char_poly(A)(A)`` vanish.

    ``m_lam`` is taken from the peeling filtration (``dim X - dim R_a``) and
    must agree with the polynomial's root multiplicity.
    """
    d = decomposition or jordan_decompose(A, hints)
    n = A.rows
    report = find_eigenvalues(A, hints)
    product = ExactMatrix.identity(n)
    for f, _ in d.peels:
        if f.multiplicity != report.multiplicities.get(f.lam):
            raise VerificationFailed(f"multiplicity mismatch for {format_scalar(f.lam)}")
        product = product @ (A.shift(f.lam) ** f.multiplicity)
    return product.is_zero() and char_poly(A).evaluate_matrix(A).is_zero()
