"""Exception hierarchy. Each family maps to one CLI exit code."""

from __future__ import annotations


class GraphLimitsError(Exception):
    exit_code = 4


class InvalidInput(GraphLimitsError, ValueError):
    exit_code = 2


class SelfLoop(InvalidInput):
    pass


class DuplicateEdge(InvalidInput):
    pass


class DegreeExceeded(InvalidInput):
    pass


class Disconnected(InvalidInput):
    pass


class EmptySet(InvalidInput):
    pass


class NotConnected(InvalidInput):
    pass


class RadiusMismatch(InvalidInput):
    pass


class RadiusTooSmall(InvalidInput):
    pass


class BadParams(InvalidInput):
    pass


class GuardExceeded(GraphLimitsError):
    """A size or budget guard refused (or truncated) the computation."""

    exit_code = 3


class TooLarge(GuardExceeded):
    pass


class BallTooLarge(GuardExceeded):
    pass


class RetriesExhausted(GuardExceeded):
    pass


class BudgetExceeded(GuardExceeded):
    def __init__(self, message: str, partial=None, visited: int = 0):
        super().__init__(message)
        self.partial = partial
        self.visited = visited


class InvariantViolation(GraphLimitsError):
    exit_code = 4
