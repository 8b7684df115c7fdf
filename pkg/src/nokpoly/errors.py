"""Exception hierarchy shared by all modules."""


class NOKError(Exception):
    """Base class for every error raised by nokpoly."""


# exact arithmetic
class MixedRadicandArithmetic(NOKError, ArithmeticError):
    pass


class DivisionByZero(NOKError, ZeroDivisionError):
    pass


# lattices and models
class NotSymmetric(NOKError, ValueError):
    pass


class WrongSignature(NOKError, ValueError):
    pass


class LatticeMismatch(NOKError, ValueError):
    pass


class ValidationError(NOKError, ValueError):
    """Model invariant violated; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ParseError(NOKError, ValueError):
    pass


class NonPositiveCoefficient(NOKError, ValueError):
    pass


class NotPolarizationType(NOKError, ValueError):
    pass


# Zariski chambers
class NotPseudoeffective(NOKError, ValueError):
    pass


class DegenerateRay(NOKError, ValueError):
    pass


class NoValidSubset(NotPseudoeffective):
    pass


# polygons
class OutOfRange(NOKError, ValueError):
    pass


class InvalidMultiplicity(NOKError, ValueError):
    pass


# criteria
class NotAbelian(NOKError, ValueError):
    pass


class SelfIntersectionTooSmall(NOKError, ValueError):
    pass


class NotType1d(NOKError, ValueError):
    pass


class NotVeryAmple(NOKError, ValueError):
    pass


class UnknownSuite(NOKError, KeyError):
    pass
