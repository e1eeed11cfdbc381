"""Exception types raised across the package."""


class ClosureBasesError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ClosureBasesError, ValueError):
    """Malformed implication text or JSON."""


class NotStandardError(ClosureBasesError):
    """The closure system is not standard but the operation requires it."""


class BoundExceededError(ClosureBasesError):
    """An exponential routine was asked to work beyond its configured bound."""


class DCycleError(ClosureBasesError):
    """The closure system has a D-cycle; carries one cycle as attribute names."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("D-cycle: " + "→".join(self.cycle))


class PreconditionError(ClosureBasesError):
    """Some other documented precondition does not hold."""
