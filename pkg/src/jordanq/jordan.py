"""Jordan decomposition by peeling one eigenvalue at a time.

For an eigenvalue ``lam`` of ``A`` the ranges ``R_k = (A - lam)^k X`` shrink
until they stabilise at some index ``a``.  The kernels ``N_k`` of
``A - lam`` restricted to ``R_k`` give the chain starting vectors, each one
is lifted to a full chain of length ``k + 1``, and the remaining eigenvalues
are handled recursively on ``R_a``, where ``A - lam`` is invertible.

Every structural identity is checked with exact arithmetic as it is used;
a failure raises a subclass of :class:`InternalInvariantError`.
"""

from dataclasses import dataclass, field

from .eigen import Polynomial, find_eigenvalues
from .errors import (
    CountingViolation,
    IndependenceViolation,
    NoPreimage,
    NoSolution,
    NotAnEigenvalue,
    RequiresEigenvalueHint,
    VerificationFailed,
)
from .linalg import (
    ExactMatrix,
    Subspace,
    canonical_basis,
    extend_basis,
    image_basis,
    kernel_basis,
    rank,
    restrict_operator,
    solve_particular,
)
from .scalar import ONE, ZERO, format_scalar, to_scalar

__all__ = [
    "RangeFiltration",
    "KernelProfile",
    "JordanChain",
    "PeelResult",
    "Decomposition",
    "range_filtration",
    "kernel_profile",
    "nested_kernel_bases",
    "lift_chain",
    "counting_check",
    "peel_eigenvalue",
    "jordan_decompose",
    "jordan_block",
    "jordan_matrix",
    "minimal_polynomial",
]


@dataclass(frozen=True)
class RangeFiltration:
    """``R_0 ⊇ R_1 ⊇ ... ⊇ R_a`` for one eigenvalue.

    ``next_dim`` is ``dim R_{a+1}``, computed to certify stabilisation.
    """

    lam: object
    spaces: list
    dims: list
    a: int
    next_dim: int

    @property
    def ambient_dim(self):
        return self.dims[0]

    @property
    def multiplicity(self):
        return self.dims[0] - self.dims[self.a]


@dataclass(frozen=True)
class KernelProfile:
    lam: object
    n: list


@dataclass(frozen=True)
class JordanChain:
    """Vectors ``x^0, ..., x^k`` with ``(A - lam) x^0 = 0`` and ``(A - lam) x^j = x^{j-1}``."""

    lam: object
    vectors: list

    def __len__(self):
        return len(self.vectors)

    def satisfies(self, A):
        B = A.shift(self.lam)
        prev = None
        for x in self.vectors:
            if not any(x):
                return False
            Bx = B @ x
            if prev is None:
                if any(Bx):
                    return False
            elif Bx != prev:
                return False
            prev = x
        return True


@dataclass(frozen=True)
class PeelResult:
    chains: list
    rest_space: Subspace
    rest_operator: ExactMatrix
    filtration: RangeFiltration
    profile: KernelProfile


@dataclass
class Decomposition:
    """``A P = P J`` with the columns of ``P`` laid out chain by chain.

    ``structure`` maps each eigenvalue to its block sizes, largest first.
    ``peels`` keeps the filtration and kernel profile of every peeling step,
    each in the coordinates of the space it was computed in.
    """

    P: ExactMatrix
    J: ExactMatrix
    chains: list
    structure: dict
    peels: list = field(default_factory=list, repr=False)

    @property
    def eigenvalues(self):
        return list(self.structure)


# building blocks -------------------------------------------------------------


def range_filtration(A, lam):
    """Ranges of powers of ``A - lam`` until two consecutive ones agree.

    Each ``R_{k+1}`` is the image of ``A - lam`` applied to the basis of
    ``R_k``; bases are kept in reduced column-echelon form.
    """
    lam = to_scalar(lam)
    n = A.rows
    B = A.shift(lam)
    spaces = [Subspace.full(n)]
    dims = [n]
    while True:
        current = spaces[-1]
        if current.dim == 0:
            nxt = current
        else:
            nxt = canonical_basis(image_basis(B @ current.basis))
        if nxt.dim == current.dim:
            break
        spaces.append(nxt)
        dims.append(nxt.dim)
    a = len(dims) - 1
    if a == 0:
        raise NotAnEigenvalue(f"{format_scalar(lam)} is not an eigenvalue")
    return RangeFiltration(lam, spaces, dims, a, nxt.dim)


def kernel_profile(f):
    """``n_k = r_k - r_{k+1}`` for ``0 <= k < a``."""
    n = [f.dims[k] - f.dims[k + 1] for k in range(f.a)]
    for k in range(len(n) - 1):
        if n[k] < n[k + 1]:
            raise CountingViolation(f"kernel dimensions increase at level {k}: {n}")
    return KernelProfile(f.lam, n)


def _kernel_on(B, S):
    """Kernel of ``B`` restricted to ``S``, in ambient coordinates."""
    if S.dim == 0:
        return Subspace.zero(S.ambient_dim)
    coeffs = kernel_basis(B @ S.basis)
    vecs = [S.basis @ c for c in coeffs.vectors]
    return Subspace._trusted(S.ambient_dim, ExactMatrix.from_columns(vecs, S.ambient_dim))


def nested_kernel_bases(A, f):
    """Starting vectors ``x^0`` grouped by level.

    Returns ``levels`` with ``levels[k]`` the vectors that extend a basis of
    ``N_{k+1}`` to one of ``N_k``; each starts a chain of length ``k + 1``.
    """
    B = A.shift(f.lam)
    n = f.ambient_dim
    levels = [[] for _ in range(f.a)]
    chosen = []
    for k in range(f.a - 1, -1, -1):
        N_k = _kernel_on(B, f.spaces[k])
        inner = Subspace._trusted(n, ExactMatrix.from_columns(chosen, n))
        new = extend_basis(inner, N_k)
        levels[k] = new
        chosen = chosen + new
    return levels


def _lift(B, powers, x0, k):
    if k == 0:
        return [tuple(x0)]
    try:
        top = solve_particular(powers[k], x0)
    except NoSolution as exc:
        raise NoPreimage(f"no preimage of x^0 under (A - lam)^{k}") from exc
    vectors = [top]
    for _ in range(k):
        vectors.append(B @ vectors[-1])
    vectors.reverse()
    if vectors[0] != tuple(x0):
        raise NoPreimage("lifted chain does not return to x^0")
    return vectors


def lift_chain(A, lam, x0, k):
    """Chain of length ``k + 1`` ending at the canonical solution of ``(A - lam)^k x = x0``."""
    lam = to_scalar(lam)
    x0 = tuple(to_scalar(v) for v in x0)
    B = A.shift(lam)
    if any(B @ x0):
        raise NoPreimage("x^0 is not in the kernel of A - lam")
    powers = [ExactMatrix.identity(A.rows)]
    for _ in range(k):
        powers.append(powers[-1] @ B)
    return JordanChain(lam, _lift(B, powers, x0, k))


def counting_check(f, profile):
    """Total chain length for one eigenvalue; must equal ``dim X - dim R_a``."""
    n = list(profile.n) + [0]
    a = f.a
    total = sum((k + 1) * (n[k] - n[k + 1]) for k in range(a))
    expected = f.dims[0] - f.dims[a]
    telescoped = sum(f.dims[k] - f.dims[k + 1] for k in range(a))
    if not (total == sum(n) == telescoped == expected):
        raise CountingViolation(
            f"chain count {total}, sum n_k {sum(n)}, expected {expected} for {format_scalar(f.lam)}"
        )
    if any(profile.n[k] != f.dims[k] - f.dims[k + 1] for k in range(a)):
        raise CountingViolation("n_k differs from r_k - r_(k+1)")
    return total


def peel_eigenvalue(A, lam):
    """All chains for ``lam`` plus the operator left on ``R_a``."""
    lam = to_scalar(lam)
    f = range_filtration(A, lam)
    profile = kernel_profile(f)
    total = counting_check(f, profile)
    levels = nested_kernel_bases(A, f)

    B = A.shift(lam)
    powers = [ExactMatrix.identity(A.rows)]
    for _ in range(f.a - 1):
        powers.append(powers[-1] @ B)
    chains = []
    for k in range(f.a - 1, -1, -1):
        for x0 in levels[k]:
            chains.append(JordanChain(lam, _lift(B, powers, x0, k)))

    if sum(len(c) for c in chains) != total:
        raise CountingViolation("number of chain vectors differs from dim X - dim R_a")
    rest = f.spaces[f.a]
    stacked = rest.vectors + [v for c in chains for v in c.vectors]
    if stacked and rank(ExactMatrix.from_columns(stacked, A.rows)) != A.rows:
        raise IndependenceViolation("chain vectors together with R_a are dependent")
    return PeelResult(chains, rest, restrict_operator(A, rest), f, profile)


# assembly ---------------------------------------------------------------------


def jordan_block(lam, size):
    lam = to_scalar(lam)
    data = [
        [lam if i == j else (ONE if j == i + 1 else ZERO) for j in range(size)]
        for i in range(size)
    ]
    return ExactMatrix(data)


def jordan_matrix(blocks):
    """Block-diagonal matrix from ``[(lam, size), ...]`` in the given order."""
    n = sum(s for _, s in blocks)
    data = [[ZERO] * n for _ in range(n)]
    at = 0
    for lam, size in blocks:
        lam = to_scalar(lam)
        for j in range(size):
            data[at + j][at + j] = lam
            if j:
                data[at + j - 1][at + j] = ONE
        at += size
    return ExactMatrix(data, n)


def _decompose(A, eigenvalues, peels):
    # chains of A in A's own coordinates; the recursion mirrors the induction
    if A.rows == 0 or not eigenvalues:
        if A.rows:
            raise RequiresEigenvalueHint("eigenvalues exhausted before the space")
        return []
    lam, rest_values = eigenvalues[0], eigenvalues[1:]
    result = peel_eigenvalue(A, lam)
    peels.append((result.filtration, result.profile))
    chains = list(result.chains)
    if result.rest_space.dim:
        Q = result.rest_space.basis
        for c in _decompose(result.rest_operator, rest_values, peels):
            chains.append(JordanChain(c.lam, [Q @ v for v in c.vectors]))
    return chains


def jordan_decompose(A, hints=None):
    """Jordan form ``A P = P J`` with eigenvalues in ascending order.

    Blocks of one eigenvalue come largest first; ties keep the order in which
    their starting vectors were found.  The result is verified exactly before
    it is returned.
    """
    if not A.is_square():
        raise ValueError("Jordan form of a non-square matrix")
    n = A.rows
    if n == 0:
        empty = ExactMatrix.zeros(0, 0)
        return Decomposition(empty, empty, [], {})
    report = find_eigenvalues(A, hints)
    if not report.complete:
        raise RequiresEigenvalueHint(
            f"eigenvalues not all known; unsplit factor {report.residual}", report.residual
        )
    peels = []
    chains = _decompose(A, report.values, peels)

    for f, _ in peels:
        if f.multiplicity != report.multiplicities[f.lam]:
            raise VerificationFailed(
                f"multiplicity of {format_scalar(f.lam)}: filtration {f.multiplicity}, "
                f"polynomial {report.multiplicities[f.lam]}"
            )

    order = {lam: i for i, lam in enumerate(report.values)}
    ranked = sorted(enumerate(chains), key=lambda t: (order[t[1].lam], -len(t[1]), t[0]))
    chains = [c for _, c in ranked]
    structure = {}
    for c in chains:
        structure.setdefault(c.lam, []).append(len(c))
    P = ExactMatrix.from_columns([v for c in chains for v in c.vectors], n)
    J = jordan_matrix([(c.lam, len(c)) for c in chains])
    if rank(P) != n:
        raise VerificationFailed("transform matrix is singular")
    if A @ P != P @ J:
        raise VerificationFailed("A P != P J")
    return Decomposition(P, J, chains, structure, peels)


def minimal_polynomial(A, hints=None, decomposition=None):
    """Product of ``(x - lam)^a`` with ``a`` the largest block for ``lam``."""
    d = decomposition or jordan_decompose(A, hints)
    p = Polynomial([ONE])
    for lam, sizes in d.structure.items():
        p = p * Polynomial.x_minus(lam) ** max(sizes)
    return p
