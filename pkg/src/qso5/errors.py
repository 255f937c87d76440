"""Exception classes shared across the package."""


class AlgebraError(Exception):
    """Base class for every domain error raised by qso5."""


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class NonInvertibleNegativePower(AlgebraError):
    pass


class UnderivableInverseRule(AlgebraError):
    pass


class FuelExhausted(AlgebraError):
    """Rewriting ran past its rule-application budget."""


class InvalidPresentation(AlgebraError):
    pass


class NotQCommuting(AlgebraError):
    pass


class BothParamsZero(AlgebraError):
    pass


class BetaZero(AlgebraError):
    pass


class NotADerivation(AlgebraError):
    pass


class ObstructedShape(AlgebraError):
    pass


class NotInner(AlgebraError):
    """Raised when a derivation of B cannot be written as ad_x with x in B.

    Exactly one of ``lam`` (nonzero scalar part) or ``negative_part``
    (the terms of x carrying a negative power of e4) is set.
    """

    def __init__(self, lam=None, negative_part=None):
        self.lam = lam
        self.negative_part = negative_part
        if lam is not None:
            msg = f"derivation has a nonzero scalar part lambda = {lam}"
        else:
            msg = f"inner part leaves B: negative e4 powers in {negative_part}"
        super().__init__(msg)


class ParseError(AlgebraError, SyntaxError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownGenerator(AlgebraError):
    pass


class NegativePowerNotInvertible(NonInvertibleNegativePower):
    pass


class SchemaError(AlgebraError, ValueError):
    pass
