"""Exception hierarchy shared by every module of the package."""


class CodingError(ValueError):
    """Base class for domain errors raised by conjcodes."""


class MismatchedField(CodingError):
    pass


class LengthMismatch(CodingError):
    pass


class DivisionByZero(CodingError, ZeroDivisionError):
    pass


class SingularBasis(CodingError):
    pass


class TooLarge(CodingError):
    """A desk-scale cap would be exceeded; raised instead of degrading."""


class NotConjugate(CodingError):
    pass


class NotRepresentative(CodingError):
    pass


class InvalidMessage(CodingError):
    pass


class DomainError(CodingError):
    pass


class UnsupportedField(CodingError):
    pass


# The following signal internal inconsistencies; a correct build never raises them.


class PhaseMismatch(CodingError):
    pass


class EigenvalueMismatch(CodingError):
    pass


class MixtureMismatch(CodingError):
    pass


class EqualityViolation(CodingError):
    pass
