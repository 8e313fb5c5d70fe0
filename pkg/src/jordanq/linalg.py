"""Dense exact linear algebra over Q(i).

Matrices are immutable; vectors are plain tuples of :class:`GaussianRational`.
Row reduction always pivots on the first nonzero entry found scanning down
the current column, so every result here is reproducible bit for bit.
"""

from dataclasses import dataclass

from .errors import NoSolution, NotInvariant, NotNested, Singular
from .scalar import ONE, ZERO, format_scalar, to_scalar

__all__ = [
    "ExactMatrix",
    "Subspace",
    "vector",
    "rref",
    "rank",
    "det",
    "kernel_basis",
    "image_basis",
    "solve_particular",
    "restrict_operator",
    "extend_basis",
    "invert",
    "canonical_basis",
    "span",
]


def vector(values):
    return tuple(to_scalar(v) for v in values)


class ExactMatrix:
    """Dense ``rows x cols`` matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, cols=None):
        rows = tuple(tuple(to_scalar(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                cols = 0
            else:
                cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _wrap(cls, data, rows, cols):
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = data
        return m

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n):
        data = tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        return cls._wrap(data, n, n)

    @classmethod
    def diag(cls, *values):
        vals = [to_scalar(v) for v in values]
        n = len(vals)
        data = tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n))
        return cls._wrap(data, n, n)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("row count needed for a matrix with no columns")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        data = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls._wrap(data, rows, len(columns))

    # access ---------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        """Row-major flat list of entries."""
        return [x for row in self._data for x in row]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def column(self, j):
        return tuple(row[j] for row in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(row) for row in self._data]

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not any(x for row in self._data for x in row)

    # arithmetic -----------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            data = tuple(tuple(_dot(row, c) for c in ocols) for row in self._data)
            return ExactMatrix._wrap(data, self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(row, v) for row in self._data)

    def __add__(self, other):
        self._check_same(other)
        data = tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return ExactMatrix._wrap(data, self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        data = tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)
        )
        return ExactMatrix._wrap(data, self.rows, self.cols)

    def __neg__(self):
        return ExactMatrix._wrap(
            tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols
        )

    def scale(self, c):
        c = to_scalar(c)
        return ExactMatrix._wrap(
            tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols
        )

    def shift(self, lam):
        """Return ``self - lam*I``."""
        lam = to_scalar(lam)
        data = tuple(
            tuple(a - lam if i == j else a for j, a in enumerate(r))
            for i, r in enumerate(self._data)
        )
        return ExactMatrix._wrap(data, self.rows, self.cols)

    def __pow__(self, k):
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result, base = ExactMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self):
        return ExactMatrix._wrap(
            tuple(zip(*self._data)) if self.rows else (), self.cols, self.rows
        )

    @property
    def T(self):
        return self.transpose()

    def hstack(self, *others):
        data = [list(r) for r in self._data]
        cols = self.cols
        for o in others:
            if o.rows != self.rows:
                raise ValueError("row count mismatch in hstack")
            for r, extra in zip(data, o._data):
                r.extend(extra)
            cols += o.cols
        return ExactMatrix._wrap(tuple(tuple(r) for r in data), self.rows, cols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    # comparison / display ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._data)
        return f"ExactMatrix([{body}])"

    def to_strings(self):
        return [[format_scalar(x) for x in r] for r in self._data]


def _dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


# row reduction ------------------------------------------------------------


def _rref_inplace(rows, ncols, stop=None):
    """Reduce ``rows`` (list of lists) to RREF in place; return pivot columns.

    Only the first ``stop`` columns are eligible as pivots.
    """
    stop = ncols if stop is None else stop
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(stop):
        if r == nrows:
            break
        p = r
        while p < nrows and not rows[p][c]:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        piv = prow[c]
        if piv != ONE:
            f = piv.inverse()
            prow = [x * f if x else x for x in prow]
            rows[r] = prow
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [
                    a - f * b if b else a for a, b in zip(row, prow)
                ]
        pivots.append(c)
        r += 1
    return pivots


def rref(M):
    """Reduced row echelon form: ``(reduced, pivot_cols, rank)``."""
    rows = [list(r) for r in M._data]
    pivots = _rref_inplace(rows, M.cols)
    reduced = ExactMatrix._wrap(tuple(tuple(r) for r in rows), M.rows, M.cols)
    return reduced, pivots, len(pivots)


class _Echelon:
    """Incrementally maintained echelon basis used for independence tests."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = {}  # pivot column -> row with 1 at the pivot

    def reduce(self, v):
        v = list(v)
        for c in range(self.dim):
            x = v[c]
            if x:
                row = self.rows.get(c)
                if row is not None:
                    v = [a - x * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v):
        """Insert ``v``; return False (and change nothing) if it is dependent."""
        w = self.reduce(v)
        for c, x in enumerate(w):
            if x:
                f = x.inverse()
                self.rows[c] = [y * f if y else y for y in w]
                return True
        return False

    @property
    def rank(self):
        return len(self.rows)


def rank(M):
    """Rank via forward elimination (no back substitution)."""
    rows = [list(r) for r in M._data]
    nrows = len(rows)
    r = 0
    for c in range(M.cols):
        if r == nrows:
            break
        p = r
        while p < nrows and not rows[p][c]:
            p += 1
        if p == nrows:
            continue
        rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        inv = prow[c].inverse()
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f:
                f = f * inv
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        r += 1
    return r


def det(M):
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in M._data]
    n = M.rows
    d = ONE
    for c in range(n):
        p = c
        while p < n and not rows[p][c]:
            p += 1
        if p == n:
            return ZERO
        if p != c:
            rows[p], rows[c] = rows[c], rows[p]
            d = -d
        prow = rows[c]
        d = d * prow[c]
        inv = prow[c].inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
    return d


# subspaces ------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Column span of ``basis`` inside a space of dimension ``ambient_dim``.

    The basis must have full column rank; this is checked on construction.
    """

    ambient_dim: int
    basis: ExactMatrix

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis rows must equal the ambient dimension")
        if self.basis.cols and rank(self.basis) != self.basis.cols:
            raise ValueError("subspace basis is not linearly independent")

    @classmethod
    def _trusted(cls, ambient_dim, basis):
        # skips the rank check for bases independent by construction
        s = object.__new__(cls)
        object.__setattr__(s, "ambient_dim", ambient_dim)
        object.__setattr__(s, "basis", basis)
        return s

    @classmethod
    def full(cls, n):
        return cls._trusted(n, ExactMatrix.identity(n))

    @classmethod
    def zero(cls, n):
        return cls._trusted(n, ExactMatrix.zeros(n, 0))

    @property
    def dim(self):
        return self.basis.cols

    @property
    def vectors(self):
        return self.basis.columns()

    def contains(self, v):
        if self.dim == 0:
            return not any(v)
        return rank(self.basis.hstack(ExactMatrix.from_columns([v], self.ambient_dim))) == self.dim


def span(vectors, ambient_dim):
    """Subspace spanned by ``vectors`` (which must be independent)."""
    return Subspace(ambient_dim, ExactMatrix.from_columns(vectors, ambient_dim))


def canonical_basis(S):
    """Same subspace, basis replaced by its reduced column-echelon form.

    The result depends only on the subspace, not on the basis it came with.
    """
    if S.dim == 0:
        return S
    reduced, _, r = rref(S.basis.transpose())
    return Subspace._trusted(S.ambient_dim, ExactMatrix.from_columns(reduced._data[:r], S.ambient_dim))


def kernel_basis(M):
    """Basis of ``{x : Mx = 0}``: one vector per free column, free entry 1."""
    reduced, pivots, _ = rref(M)
    pivot_set = set(pivots)
    vectors = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = [ZERO] * M.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -reduced._data[i][f]
        vectors.append(tuple(v))
    return Subspace._trusted(M.cols, ExactMatrix.from_columns(vectors, M.cols))


def image_basis(M):
    """Column space of ``M``, spanned by its pivot columns in ascending order."""
    _, pivots, _ = rref(M)
    return Subspace._trusted(M.rows, ExactMatrix.from_columns([M.column(j) for j in pivots], M.rows))


def solve_particular(M, b):
    """One ``x`` with ``M x = b``: every free variable set to zero.

    Raises :class:`NoSolution` when ``b`` is outside the column space.
    """
    b = vector(b)
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    rows = [list(r) + [x] for r, x in zip(M._data, b)]
    pivots = _rref_inplace(rows, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        raise NoSolution("right-hand side is not in the column space")
    x = [ZERO] * M.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][M.cols]
    return tuple(x)


def restrict_operator(A, S):
    """Matrix of ``A`` acting on ``S`` in the coordinates of ``S.basis``.

    Returns ``M`` with ``A @ S.basis == S.basis @ M``.
    """
    if not A.is_square() or A.rows != S.ambient_dim:
        raise ValueError("operator and subspace dimensions disagree")
    d = S.dim
    if d == 0:
        return ExactMatrix.zeros(0, 0)
    B = S.basis
    AB = A @ B
    rows = [list(r) + list(s) for r, s in zip(B._data, AB._data)]
    pivots = _rref_inplace(rows, 2 * d)
    if len(pivots) != d or pivots[-1] >= d:
        raise NotInvariant("operator maps the subspace outside itself")
    data = tuple(tuple(rows[i][d:]) for i in range(d))
    return ExactMatrix._wrap(data, d, d)


def extend_basis(inner, outer):
    """Vectors of ``outer.basis`` that complete ``inner`` to a basis of ``outer``.

    Columns of ``outer`` are scanned in order and each is kept exactly when
    it is independent of ``inner`` plus the vectors already kept.
    """
    if inner.ambient_dim != outer.ambient_dim:
        raise NotNested("ambient dimensions differ")
    ech = _Echelon(outer.ambient_dim)
    for v in outer.vectors:
        ech.add(v)
    for v in inner.vectors:
        if ech.add(v):
            raise NotNested("inner subspace is not contained in outer")
    ech = _Echelon(inner.ambient_dim)
    for v in inner.vectors:
        ech.add(v)
    kept = [v for v in outer.vectors if ech.add(v)]
    assert len(kept) == outer.dim - inner.dim
    return kept


def invert(M):
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(M._data)]
    pivots = _rref_inplace(rows, 2 * n, stop=n)
    if len(pivots) < n:
        raise Singular(f"matrix has rank {len(pivots)} < {n}")
    return ExactMatrix._wrap(tuple(tuple(r[n:]) for r in rows), n, n)
