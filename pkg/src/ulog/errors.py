"""Exception hierarchy.

Validation problems (bad shapes, non-members, malformed specs) and numerical
problems (ambiguous clusters, residuals above tolerance) are kept apart so the
CLI can map them onto distinct exit codes.
"""


class UlogError(Exception):
    """Base class for all errors raised by the package."""


class ValidationError(UlogError, ValueError):
    """Input does not satisfy a precondition."""


class ToleranceError(UlogError, ArithmeticError):
    """A numerical check failed or a classification is ambiguous at the working tolerance."""
