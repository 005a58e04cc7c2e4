"""Exception types shared across the package."""


class WordSyntaxError(ValueError):
    """Raised when word text cannot be parsed; carries the 1-based offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class UnsupportedAlphabetError(ValueError):
    """Raised when an operation requires an alphabet size it does not support."""


class CapacityError(RuntimeError):
    """Raised when a request exceeds a stated enumeration or budget limit."""


class InternalCheckError(RuntimeError):
    """Raised when a runtime self-check fails (e.g. two engines disagree)."""
