"""Exception types raised by rhsignal."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InsufficientGridError(ValueError):
    """A sampled signal does not cover the support needed by the requested basis."""


class BasisMismatchError(ValueError):
    """A coefficient vector belongs to a different basis than the operation expects."""


class ParseError(ValueError):
    """Malformed input file. ``location`` is ``path:line`` when known."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
