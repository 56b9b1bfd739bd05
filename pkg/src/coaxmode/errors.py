"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: validation problems
(bad arguments, bad geometry, unsupported order) exit with 2, numerical
failures (lost brackets, quadrature stagnation, resource caps) with 1.
"""


class CoaxmodeError(Exception):
    """Base class for all package errors."""


class DomainError(CoaxmodeError, ValueError):
    """Argument outside the mathematical domain (e.g. x < 0 for J_m)."""


class OrderError(CoaxmodeError, ValueError):
    """Bessel order outside the supported |m| <= 50 envelope."""


class GeometryError(CoaxmodeError, ValueError):
    """Cavity dimensions violate 0 < a < b, positive height, etc."""


class EvaluationError(CoaxmodeError, ArithmeticError):
    """A function value left the representable range (overflow)."""


class ConditioningError(CoaxmodeError, ArithmeticError):
    """A coefficient ratio is too ill-conditioned to be meaningful."""


class RootFindingError(CoaxmodeError, RuntimeError):
    """A root bracket could not be certified or refined."""


class QuadratureError(CoaxmodeError, RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message: str, achieved_tolerance: float):
        super().__init__(message)
        self.achieved_tolerance = achieved_tolerance


class ResourceLimitError(CoaxmodeError, RuntimeError):
    """An enumeration would exceed the hard result-size cap."""
