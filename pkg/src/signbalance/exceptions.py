"""Exception hierarchy shared by every module."""


class SignBalanceError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SignBalanceError, ValueError):
    """Input violates a documented precondition."""


class NumericalError(SignBalanceError, ArithmeticError):
    """A numerical routine failed (non-convergence, breakdown)."""

    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension


class RangeError(NumericalError, OverflowError):
    """A spectral function overflowed for some eigenvalue."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class DivergenceError(NumericalError):
    """An iterated process left the finite range."""

    def __init__(self, message, last_finite_t):
        super().__init__(message)
        self.last_finite_t = last_finite_t


class DegenerateRankError(NumericalError):
    """An eigenvalue indicator needs a full-rank correlation matrix."""


class WindowError(SignBalanceError):
    """A rolling window could not produce a correlation matrix."""
