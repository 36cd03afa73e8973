"""Exception types shared across the package."""


class TricomiError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(TricomiError, ValueError):
    """An exponent or coefficient is outside its admissible range."""


class PoleError(TricomiError, ValueError):
    """A special function was evaluated at one of its poles."""


class UnsupportedParameters(TricomiError, NotImplementedError):
    """The requested parameter combination has no implemented branch."""


class ConvergenceError(TricomiError, ArithmeticError):
    """A series or iteration failed to reach its tolerance."""


class SingularKernelError(TricomiError, ValueError):
    """The kernel was evaluated on or beyond its singular set."""


class ToleranceNotMet(TricomiError, ArithmeticError):
    """A quadrature could not certify the requested accuracy.

    The best available estimate is kept on the exception so callers can
    still inspect it.
    """

    def __init__(self, message, value=None, est_error=None):
        super().__init__(message)
        self.value = value
        self.est_error = est_error


class CFLViolation(TricomiError, ValueError):
    """The explicit time step is too large for the requested grid."""


class StencilError(TricomiError, ValueError):
    """A finite-difference stencil would leave the admissible region."""
