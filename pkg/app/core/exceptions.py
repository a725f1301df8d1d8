"""Exception hierarchy shared by the library and the command-line surface.

Every exception carries the process exit code the CLI reports for it.
"""


class SimsunError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidWordError(SimsunError, ValueError):
    """A word is not a valid (signed) permutation, or cannot be parsed."""

    exit_code = 2


class UsageError(SimsunError, ValueError):
    """An argument is outside the range an operation accepts."""

    exit_code = 2


class InfeasibleEnumerationError(SimsunError):
    """Exhaustive enumeration was requested beyond the configured cap."""

    exit_code = 3

    def __init__(self, n: int, cap: int, ambient: str):
        super().__init__(
            f"exhaustive enumeration of {ambient}_{n} exceeds the cap n <= {cap} "
            f"(set SIMSUN_MAX_N to override)"
        )
        self.n = n
        self.cap = cap


class SeriesDomainError(SimsunError, ArithmeticError):
    """A series operation left the real domain of the function involved."""

    exit_code = 4


class BranchError(SeriesDomainError):
    """A closed form would need a complex branch at the expansion point."""
