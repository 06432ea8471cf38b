"""Exception types shared across the package."""


class UsageError(ValueError):
    """Malformed input: dimension mismatch, bad literal, bad argument."""


class DomainError(ValueError):
    """Well-formed input outside the mathematical domain of an operation."""


class UndecidedAtPrecision(ArithmeticError):
    """Candidate isolation failed at the maximum working precision."""

    def __init__(self, message, precision):
        super().__init__(message)
        self.precision = precision
