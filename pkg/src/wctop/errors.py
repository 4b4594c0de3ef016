"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`WctError`, which is itself a :class:`ValueError` so callers that
only care about bad input can catch the builtin.
"""


class WctError(ValueError):
    """Base class for all library errors."""


class EmptySpace(WctError):
    pass


class NonPositiveWeight(WctError):
    pass


class NotAPartition(WctError):
    pass


class ZeroMeasureBlock(WctError):
    pass


class SpaceMismatch(WctError):
    pass


class InvalidExponent(WctError):
    pass


class ExponentMismatch(WctError):
    pass


class LevelOutOfRange(WctError):
    pass


class NegativeDensity(WctError):
    pass


class WrongGalleryFamily(WctError):
    pass


class LadderTooShort(WctError):
    pass


class NoSuchN(WctError):
    pass


class NotConvergent(WctError):
    pass


class NonRealComparison(WctError):
    pass


class HorizonTooSmall(WctError):
    pass


class PreconditionNot2Expansive(WctError):
    pass


class DimensionMismatch(WctError):
    pass


class SpecError(WctError):
    """Malformed JSON space description; ``field`` names the culprit."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
