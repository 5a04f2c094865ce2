"""Exception hierarchy shared by every module."""


class GaborError(Exception):
    """Base class for all errors raised by finite_gabor."""


class InvalidGroupError(GaborError, ValueError):
    pass


class GroupMismatchError(GaborError, ValueError):
    pass


class InvalidLatticeError(GaborError, ValueError):
    pass


class ShapeError(GaborError, ValueError):
    pass


class InvalidParameterError(GaborError, ValueError):
    pass


class DomainError(GaborError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class NumericError(GaborError, ArithmeticError):
    """An iterative kernel failed to converge."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class SingularityError(GaborError, ArithmeticError):
    """Matrix is singular or indefinite where invertibility is required."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class RankDeficiencyError(GaborError, ArithmeticError):
    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class NotAFrameError(GaborError, ArithmeticError):
    """Raised when a Gabor system fails to be a frame.

    The measured bounds travel with the exception so callers (the CLI in
    particular) can report them without recomputing.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class PreconditionError(GaborError, ValueError):
    pass


class SchemaError(GaborError, ValueError):
    """Malformed input file or flag value."""
