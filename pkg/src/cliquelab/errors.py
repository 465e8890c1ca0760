"""Exceptions shared across modules."""


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SolveTimeout(Exception):
    """A solver hit its cooperative wall-clock deadline before finishing."""


class ConsistencyError(AssertionError):
    """A solver or decoder produced something that violates its own contract.

    Signals a defect in this package (e.g. a decoded witness that is not a
    clique), never a property of the input instance.
    """
