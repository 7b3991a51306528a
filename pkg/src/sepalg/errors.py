"""Exception taxonomy shared by the library and the command line.

Each class carries the process exit code the CLI maps it to.
"""


class SepalgError(Exception):
    exit_code = 4


class UsageError(SepalgError, ValueError):
    """Bad input: wrong shapes, violated preconditions, malformed files."""

    exit_code = 1


class DomainError(SepalgError, ArithmeticError):
    """The input is well formed but the mathematics says no."""

    exit_code = 2


class NotSeparable(DomainError):
    pass


class CapacityError(SepalgError):
    """A configured size cap was exceeded."""

    exit_code = 3


class ConsistencyError(SepalgError, AssertionError):
    """An internal cross-check failed. Always a bug or a broken invariant."""

    exit_code = 4
