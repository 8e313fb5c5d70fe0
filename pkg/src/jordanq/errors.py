"""Exception hierarchy shared by all modules."""


class JordanError(Exception):
    """Base class for every error raised by this package."""


class ParseError(JordanError, ValueError):
    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}" if text else message)


class NoSolution(JordanError):
    """The right-hand side is not in the column space."""


class NotInvariant(JordanError):
    """A subspace is not mapped into itself by the operator."""


class NotNested(JordanError):
    pass


class Singular(JordanError, ZeroDivisionError):
    pass


class RequiresEigenvalueHint(JordanError):
    """Eigenvalues could not all be found inside Q(i).

    ``polynomial`` holds the factor of the characteristic polynomial that is
    left unsplit.
    """

    def __init__(self, message, polynomial=None):
        self.polynomial = polynomial
        super().__init__(message)


class InvalidHint(JordanError, ValueError):
    pass


class NotAnEigenvalue(JordanError, ValueError):
    pass


class NotSimilar(JordanError):
    pass


class InternalInvariantError(JordanError, AssertionError):
    """An identity that holds for every valid input was violated (a bug)."""


class NoPreimage(InternalInvariantError):
    pass


class CountingViolation(InternalInvariantError):
    pass


class IndependenceViolation(InternalInvariantError):
    pass


class VerificationFailed(InternalInvariantError):
    pass
