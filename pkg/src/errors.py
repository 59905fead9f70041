class BraidCalculusError(Exception):
    """Base class for every error raised by the braid calculus library."""

    exit_code: int = 1


class BraidWordError(BraidCalculusError):
    """Word text could not be parsed or violates the BraidWord invariants."""

    exit_code = 2


class MoveError(BraidWordError):
    """A rewriting move was requested where its precondition does not hold."""


class ScopeError(BraidCalculusError):
    """Input lies outside what the construction covers (mixed signs, non positive words)."""

    exit_code = 3


class InvariantViolation(BraidCalculusError):
    """A property that the construction guarantees did not hold. Always a bug."""

    exit_code = 4


class SearchExhausted(BraidCalculusError):
    """The brute force depth search ran out of budget before completing a tree."""

    exit_code = 4


class ConfigurationError(BraidCalculusError):
    """Config file could not be loaded, e.g. an env:: value names an unset variable."""

    exit_code = 2
