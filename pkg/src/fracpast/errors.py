"""Error taxonomy shared by every module.

The split mirrors how callers need to react: bad inputs (DomainError),
algorithms that gave up (NonConvergentError, MaxSubdivisionsError),
requests outside the implemented surface (UnsupportedError), and attempts
to consume a value that only exists as a truncation artifact
(DivergedError).
"""


class FracpastError(Exception):
    """Base class for all library errors."""


class DomainError(FracpastError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NonConvergentError(FracpastError, ArithmeticError):
    """An iterative scheme (series, root search) failed to meet tolerance."""


class MaxSubdivisionsError(FracpastError, ArithmeticError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the partial result so diagnostics survive the failure.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedError(FracpastError, NotImplementedError):
    """The operation is valid mathematically but outside this library's scope."""


class DivergedError(FracpastError, ArithmeticError):
    """A divergent measure was used where a finite value is required."""
