"""Exception hierarchy shared by every ultranorm module."""


class UltranormError(Exception):
    """Base class for all library errors."""


class SingularMatrix(UltranormError):
    pass


class DimensionMismatch(UltranormError):
    pass


class FieldMismatch(UltranormError):
    """Two objects live over different valued fields."""


class ModeError(UltranormError):
    """A norm has the wrong coefficient-valuation mode for the operation."""


class InvalidP(UltranormError):
    pass


class OutOfRange(UltranormError):
    """A time parameter, degree or index lies outside the allowed range."""


class ZeroVector(UltranormError):
    pass


class DomainError(UltranormError):
    """A convex profile is evaluated outside its stated interval."""


class ShapeError(UltranormError):
    """A graded expression does not have the node shape an operation needs."""


class CertificationError(UltranormError):
    """A computed joint presentation failed its exact certificate.

    This signals an engine bug, never bad user input.
    """


class NonIntegerWeights(UltranormError):
    pass


class ParseError(UltranormError):
    """Malformed input file or value."""
