"""Exception types shared across the package."""


class HamcodesError(Exception):
    """Base class for all library errors."""


class NonPrime(HamcodesError, ValueError):
    pass


class UnsupportedOrder(HamcodesError, ValueError):
    pass


class DivisionByZero(HamcodesError, ZeroDivisionError):
    pass


class IndexOutOfRange(HamcodesError, IndexError):
    pass


class AmbientMismatch(HamcodesError, ValueError):
    """Two objects live in different Hamming graphs."""


class DuplicateEntryLabel(HamcodesError, ValueError):
    pass


class SymbolOutOfRange(HamcodesError, ValueError):
    pass


class RadiusOutOfRange(HamcodesError, ValueError):
    pass


class EnumerationBoundExceeded(HamcodesError, RuntimeError):
    """An exhaustive enumeration would exceed the configured vertex bound."""


class NotDistanceTwo(HamcodesError, ValueError):
    pass


class UnsupportedDistance(HamcodesError, ValueError):
    pass


class AlphabetNotField(HamcodesError, ValueError):
    pass


class SingularMatrix(HamcodesError, ValueError):
    pass


class OrbitBoundExceeded(HamcodesError, RuntimeError):
    pass


class GroupTooLarge(HamcodesError, RuntimeError):
    pass


class NotBijection(HamcodesError, ValueError):
    pass


class NotVerifiedTriple(HamcodesError, ValueError):
    """Associate analysis requested on a triple that failed verification."""


class SimplicityViolation(HamcodesError, RuntimeError):
    """Two associates produced the same edge of the associate graph."""


class GeneratorEscapesCode(HamcodesError, ValueError):
    """A generator does not stabilise the code it is meant to act on."""


class ImageBoundExceeded(HamcodesError, RuntimeError):
    pass


class ParseError(HamcodesError, ValueError):
    pass
