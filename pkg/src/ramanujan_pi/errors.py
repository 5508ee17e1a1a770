"""Exception types shared across the package."""


class RamanujanPiError(Exception):
    """Base class for all package errors."""


class OutOfRangeError(RamanujanPiError, IndexError):
    """A lookup fell outside the range covered by a store or table."""


class DomainError(RamanujanPiError, ValueError):
    """An evaluator was called outside the domain where its formula is defined."""


class PreconditionError(RamanujanPiError, ValueError):
    """Inputs violate an operation's stated precondition."""


class DependencyError(RamanujanPiError, RuntimeError):
    """A required table or prime store is missing or does not cover the request."""


class TableFormatError(RamanujanPiError, ValueError):
    """A cache file is malformed or fails validation."""


class SieveResourceError(RamanujanPiError, MemoryError):
    """The requested sieve limit does not fit in available memory."""

    def __init__(self, limit, needed_bytes, available_bytes):
        self.limit = limit
        self.needed_bytes = needed_bytes
        self.available_bytes = available_bytes
        super().__init__(
            f"sieve limit {limit} needs ~{needed_bytes} bytes, "
            f"only {available_bytes} available"
        )
