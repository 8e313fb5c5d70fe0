"""Exact Jordan canonical forms and similarity tests over the Gaussian rationals."""

from .eigen import Polynomial, char_poly, find_eigenvalues, verify_eigenvalue
from .errors import (
    InvalidHint,
    JordanError,
    NotSimilar,
    ParseError,
    RequiresEigenvalueHint,
)
from .jordan import (
    Decomposition,
    JordanChain,
    jordan_decompose,
    jordan_matrix,
    minimal_polynomial,
)
from .linalg import ExactMatrix, Subspace
from .scalar import GaussianRational, format_scalar, parse_scalar
from .similarity import (
    cayley_hamilton_check,
    fingerprint,
    is_similar,
    similarity_transform,
    structure_from_fingerprint,
)

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "ExactMatrix",
    "GaussianRational",
    "InvalidHint",
    "JordanChain",
    "JordanError",
    "NotSimilar",
    "ParseError",
    "Polynomial",
    "RequiresEigenvalueHint",
    "Subspace",
    "cayley_hamilton_check",
    "char_poly",
    "find_eigenvalues",
    "fingerprint",
    "format_scalar",
    "is_similar",
    "jordan_decompose",
    "jordan_matrix",
    "minimal_polynomial",
    "parse_scalar",
    "similarity_transform",
    "structure_from_fingerprint",
    "verify_eigenvalue",
]
