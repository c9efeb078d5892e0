"""Exception hierarchy.

Class names double as the error names printed by the command line tool, so
they follow the names used throughout the documentation rather than the
usual ``...Error`` suffix in a few places.
"""


class SlowCFError(Exception):
    """Base class for every domain error raised by the package."""


class PoleError(SlowCFError):
    pass


class DegenerateError(SlowCFError):
    pass


class RadicandTooLarge(SlowCFError):
    pass


class NumberSyntaxError(SlowCFError, ValueError):
    pass


class PartitionError(SlowCFError):
    def __init__(self, index: int | None = None, message: str = ""):
        self.index = index
        super().__init__(message or f"interval {index}")


class NotUnimodular(PartitionError):
    pass


class GapOrOverlap(PartitionError):
    pass


class BadEndpoints(PartitionError):
    pass


class UnknownName(SlowCFError):
    pass


class OutOfRange(SlowCFError):
    pass


class WrongBranch(SlowCFError):
    pass


class InvalidSymbol(SlowCFError):
    pass


class StallError(SlowCFError):
    def __init__(self, position: int, message: str = ""):
        self.position = position
        super().__init__(message or f"no digit could be emitted at position {position}")


class NoFixedPointInCylinder(SlowCFError):
    pass


class SearchExhausted(SlowCFError):
    pass


class NotInDomain(SlowCFError):
    pass


class AlphabetMismatch(SlowCFError):
    pass


class NotFNFamily(SlowCFError):
    pass
