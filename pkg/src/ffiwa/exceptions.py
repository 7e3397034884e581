"""Exception hierarchy shared across the package.

Every computational module raises subclasses of FFIwaError so callers (CLI,
service layer, test harness) can report failures uniformly.
"""


class FFIwaError(Exception):
    """Base class for all package errors."""


class DivisionByZero(FFIwaError, ZeroDivisionError):
    pass


class UndefinedValuation(FFIwaError):
    pass


class PoleAtPlace(FFIwaError):
    pass


class ParseError(FFIwaError):
    pass


class PrecisionError(FFIwaError):
    pass


class EnumerationTooLarge(FFIwaError):
    pass


class ActionMismatch(FFIwaError):
    pass


class InvalidTameIndex(FFIwaError):
    pass


class NotReduced(FFIwaError):
    pass


class FormulaInconsistency(FFIwaError):
    pass


class InternalInvariantViolation(FFIwaError):
    """An identity the calculator guarantees failed; signals an implementation bug."""


class PreconditionGammaV(FFIwaError):
    pass


class InvalidRamificationData(FFIwaError):
    pass


class SingularCurve(FFIwaError):
    pass


class MinimalityNotAttested(FFIwaError):
    pass


class NonIntegralModel(FFIwaError):
    pass


class InconsistentData(FFIwaError):
    pass


class DegenerateSubstitution(FFIwaError):
    pass


class IsotrivialCurve(FFIwaError):
    pass


class WindowTooSmall(FFIwaError):
    pass


class CountingBug(FFIwaError):
    """Exact point counts violated a structural sanity check (weight, Hasse bound...)."""


class ThetaUndefined(FFIwaError):
    pass


class InvalidDiscriminantDegree(FFIwaError):
    pass


class TooLarge(FFIwaError):
    pass


class OracleFailure(FFIwaError):
    pass


class MissingLocalData(FFIwaError):
    pass
