"""Exception types shared across the package."""


class InvalidOrderError(ValueError):
    """Recurrence order k is below 2."""


class ConvergenceError(ArithmeticError):
    """Root iteration failed to converge.

    ``best_residual`` holds the smallest max-residual seen, so the caller
    can decide whether a retry at higher precision is worthwhile.
    """

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class PrecisionInsufficientError(ArithmeticError):
    """Root separation does not clear the residual-derived perturbation bound."""


class PrecisionExhaustedError(ArithmeticError):
    """Adaptive precision loop hit its escalation cap without certifying."""


class TailBoundError(ArithmeticError):
    """Non-dominant tail could not be certified below 1/2 at this index."""


def require_order(k):
    if k < 2:
        raise InvalidOrderError(f"recurrence order k must be >= 2, got {k}")
