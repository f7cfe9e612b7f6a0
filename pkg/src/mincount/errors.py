"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class UnsupportedOperationError(RuntimeError):
    """Raised when the alphabet lacks what an operation needs (e.g. a complement)."""


class BudgetExceededError(RuntimeError):
    """Raised by brute-force routines asked to enumerate more than their budget."""
