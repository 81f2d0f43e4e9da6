"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when inputs violate a documented precondition."""


class EqualGainError(ValueError):
    """Raised when a construction requires |w1| != |w2| but the magnitudes match."""


class SweepExhaustedError(RuntimeError):
    """Raised when the candidate sweep finds no input above the rate floor.

    Carries a ``diagnostics`` dict with the best candidate seen, its rate,
    and the sweep size, so callers can report what was tried.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
