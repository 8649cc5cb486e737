"""Exception types shared across the package."""


class PatavoidError(Exception):
    """Base class for all errors raised by this package."""


class PatternParseError(PatavoidError, ValueError):
    """Raised when a pattern string is malformed.

    ``position`` is 1-based and points at the offending character
    (0 for an empty string).
    """

    def __init__(self, message, position=0):
        super().__init__(message)
        self.position = position


class ContractError(PatavoidError, ValueError):
    """A documented precondition of an operation was violated."""


class CapacityError(PatavoidError):
    """An operation ran out of fresh variable names."""


class CorruptRecordError(PatavoidError, ValueError):
    """A record cannot be decoded because it is internally inconsistent."""
