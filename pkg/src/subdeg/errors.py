"""Shared exception types.

DomainError: a precondition or structural invariant was violated by the input.
ResourceLimitError: a configured cap (enumeration cap, table order limit,
sieve cap, prime bound) stopped the computation; carries enough context to
resize and retry.
"""


class SubdegError(Exception):
    pass


class DomainError(SubdegError, ValueError):
    pass


class ResourceLimitError(SubdegError, RuntimeError):
    def __init__(self, message, *, cap=None, requested=None, partial=None):
        super().__init__(message)
        self.cap = cap
        self.requested = requested
        # best partial result available when the limit was hit (used by the
        # density approximator to hand back its best approximation so far)
        self.partial = partial


class TableFormatError(DomainError):
    """A Cayley-table document failed parsing or validation.

    `location` pins the offending field/cell (e.g. "table[3][2]") or the
    line/column of a syntax error.
    """

    def __init__(self, message, *, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class SpecSyntaxError(DomainError):
    """A family-spec string failed to parse; `position` is the 0-based offset
    of the offending token."""

    def __init__(self, message, *, position=None, token=None):
        if position is not None:
            message = f"{message} (at offset {position}: {token!r})"
        super().__init__(message)
        self.position = position
        self.token = token
