"""Exception hierarchy.

Input problems derive from :class:`InvalidInput`, numerical precondition
failures from :class:`NumericalError`. The CLI maps these to exit codes 1 and 2.
"""


class BcircError(Exception):
    pass


class InvalidInput(BcircError, ValueError):
    pass


class ParameterOutOfRange(InvalidInput):
    pass


class NumericalError(BcircError, ArithmeticError):
    pass


class DivisionByNonUnit(NumericalError):
    pass


class LogOfZeroConstantTerm(NumericalError):
    pass


class NonVanishingConstantTerm(NumericalError):
    pass


class RadiusOutOfRange(NumericalError, ValueError):
    pass


class EvaluationOutsideDomain(NumericalError, ValueError):
    pass


class NotAHerglotzLogarithm(NumericalError):
    pass


class WordNotAlternating(InvalidInput):
    pass


class OrderTooLargeForOracle(InvalidInput):
    pass


class DimensionTooLarge(InvalidInput):
    pass


class ZeroFunction(NumericalError):
    pass


class ZeroAtOrigin(NumericalError):
    pass


class ZeroOnContour(NumericalError):
    pass


class NotDivisibleError(NumericalError):
    pass


class RootBracketingFailure(NumericalError):
    pass


class VerificationFailure(BcircError):
    pass


class ConditioningWarning(UserWarning):
    """Blaschke zero too close to the circle for reliable series expansion."""
