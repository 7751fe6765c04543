"""Exception hierarchy shared by all modules."""


class MongeError(Exception):
    """Base class for every error raised by this package."""


class MatrixFormatError(MongeError, ValueError):
    """Malformed matrix document (bad JSON, wrong shape, lower > upper)."""


class DimensionMismatch(MongeError, ValueError):
    pass


class DivisionByIntervalContainingZero(MongeError, ZeroDivisionError):
    pass


class TooSmall(MongeError, ValueError):
    """Operation needs at least two rows and two columns."""


class TooLarge(MongeError, ValueError):
    """Input exceeds the factorial-cost guard of the brute-force search."""


class NotMonge(MongeError, ValueError):
    pass


class NotStrongMonge(MongeError, ValueError):
    pass


class NotWeakMonge(MongeError, ValueError):
    pass


class NegativeEntry(MongeError, ValueError):
    pass


NegativeEntries = NegativeEntry


class NegativeScalar(MongeError, ValueError):
    pass


class IndexRangeViolation(MongeError, IndexError):
    pass


class EmptyIntersection(MongeError, ValueError):
    pass


class TrivialIntervalPresent(MongeError, ValueError):
    """Some entry has zero radius; the special-case permutation algorithm needs positive radii."""
