"""Exception hierarchy shared by the library and the command line."""


class TropijacError(Exception):
    """Base class for all library errors."""


class ValidationError(TropijacError, ValueError):
    """Bad input: unknown ids, wrong degrees, malformed data."""


class CapExceeded(TropijacError):
    """A brute-force search would exceed its configured size cap."""


class ConsistencyError(TropijacError, AssertionError):
    """Two independent computations disagree, or a theorem-level invariant failed.

    Never expected in normal operation; signals a bug.
    """
