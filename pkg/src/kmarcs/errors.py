"""Exception types shared across the package."""

from __future__ import annotations


class KmArcError(Exception):
    """Base class for every error raised by kmarcs."""


class NotFound(KmArcError):
    pass


class DivisionByZero(KmArcError, ZeroDivisionError):
    pass


class BadSubfield(KmArcError, ValueError):
    pass


class AmbientMismatch(KmArcError, ValueError):
    pass


class DegenerateInput(KmArcError, ValueError):
    pass


class BadParams(KmArcError, ValueError):
    pass


class NotScattered(BadParams):
    pass


class NotPowerOfTwo(KmArcError, ValueError):
    pass


class PreconditionError(KmArcError, ValueError):
    pass


class BadField(KmArcError, ValueError):
    pass


class BadLift(KmArcError, ValueError):
    pass


class NotTranslation(KmArcError):
    pass


class NotOPolynomial(BadParams):
    pass


class BadGeometry(KmArcError, ValueError):
    pass


class WrongType(KmArcError, ValueError):
    pass


class FieldMismatch(KmArcError, ValueError):
    pass


class DegenerateElation(KmArcError, ValueError):
    pass


class TooLarge(KmArcError):
    pass


class VerificationFailure(KmArcError):
    """A point set failed the (0, 2, t) check.

    ``line`` is the offending line (dual coordinates) when one exists and
    ``size`` its intersection size with the set.
    """

    def __init__(self, message: str, line=None, size: int | None = None):
        super().__init__(message)
        self.line = line
        self.size = size
