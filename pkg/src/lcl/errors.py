"""Exception types shared across the package."""


class LclError(Exception):
    """Base class for errors raised by this package."""


class ExpressionError(LclError):
    """Problem with a curvature expression string.

    `offset` is the byte offset into the source text where the problem
    was detected, or None when no position applies.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (offset {offset})"
        super().__init__(message)
        self.offset = offset


class ExpressionSyntaxError(ExpressionError):
    pass


class UnknownIdentifierError(ExpressionError):
    pass


class EvaluationError(LclError):
    """Expression evaluated to a non-finite value (division by zero, log of
    a nonpositive number, and similar domain faults)."""


class OutOfDomainError(LclError):
    """Requested arc-length parameter lies outside the profile domain."""


class ProfileError(LclError):
    """Curvature profile violates a family rule (zero curvature where the
    frame equations forbid it, pseudo null kappa != 1, bad domain)."""


class ConfigError(LclError):
    """Bad run parameter (step size, tolerance, malformed sweep spec)."""


class QuadratureError(LclError):
    """Adaptive quadrature did not converge. Carries the best estimate."""

    def __init__(self, message, best_estimate=float("nan")):
        super().__init__(message)
        self.best_estimate = best_estimate


class IntegrationError(LclError):
    """Frame integration aborted; the message carries the diagnostic."""


class FrameError(LclError):
    """Frame fails a precondition (Gram residual too large to start)."""


class GridMismatchError(LclError):
    """Axis candidate and trace were sampled on different grids."""


class DegenerateAxisError(LclError):
    """Axis construction is not defined for the fitted constants."""
