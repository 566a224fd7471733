"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`RamseyDegreesError`, so callers (and the CLI) can separate
computation failures from programming errors.  Where a built-in exception
fits the meaning, the class also inherits from it.
"""

from __future__ import annotations


class RamseyDegreesError(Exception):
    """Base class for all package errors."""


class IndexOutOfRange(RamseyDegreesError, IndexError):
    pass


class UnsupportedSpace(RamseyDegreesError, ValueError):
    pass


class EqualInputs(RamseyDegreesError, ValueError):
    pass


class ArityMismatch(RamseyDegreesError, ValueError):
    pass


class ArityError(RamseyDegreesError, ValueError):
    pass


class DegenerateInput(RamseyDegreesError, ValueError):
    pass


class BudgetExceeded(RamseyDegreesError, RuntimeError):
    pass


class NotMaximal(RamseyDegreesError, ValueError):
    pass


class ShapeMismatch(RamseyDegreesError, ValueError):
    pass


class SameBlockViolation(RamseyDegreesError, ValueError):
    pass


class IndexTooSmall(RamseyDegreesError, ValueError):
    pass


class ElementOutOfRange(RamseyDegreesError, ValueError):
    pass


class MissingK(RamseyDegreesError, KeyError):
    pass


class MethodUnavailable(RamseyDegreesError, LookupError):
    pass


class CeilingUnderflow(RamseyDegreesError, ValueError):
    pass


class OverlappingSupport(RamseyDegreesError, ValueError):
    pass


class TooFewPoints(RamseyDegreesError, ValueError):
    pass


class NotRigid(RamseyDegreesError, ValueError):
    pass


class DomainMismatch(RamseyDegreesError, ValueError):
    pass


class TooFewClasses(RamseyDegreesError, ValueError):
    pass


class NoMonochromaticSet(RamseyDegreesError, LookupError):
    pass
