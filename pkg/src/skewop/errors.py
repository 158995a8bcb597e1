"""Exception types shared across the package."""


class SkewOpError(Exception):
    """Base class for all package errors."""


class PoleError(SkewOpError, ZeroDivisionError):
    """A Gamma ratio or Pochhammer denominator hit a pole.

    Such parameters correspond to divergent Selberg-type integrals, so no
    value is produced.
    """

    def __init__(self, message, **context):
        self.context = context
        if context:
            detail = ", ".join(f"{k}={v}" for k, v in context.items())
            message = f"{message} ({detail})"
        super().__init__(message)


class UnsupportedShapeError(SkewOpError, ValueError):
    """A Jack polynomial value was requested for a shape we do not evaluate."""


class ConsistencyError(SkewOpError, AssertionError):
    """An internal identity of the derivation failed (indicates a bug)."""


class GuardError(SkewOpError, ValueError):
    """Monte Carlo refused to run: the estimand may have infinite variance."""
