"""Exception types raised by the library."""


class SupercircleError(Exception):
    """Base class for all library errors."""


class DivisionByZero(SupercircleError, ZeroDivisionError):
    pass


class PoleAtPoint(SupercircleError, ZeroDivisionError):
    pass


class ParseError(SupercircleError, ValueError):
    pass


class BasisMismatch(SupercircleError, ValueError):
    pass


class IndexOutOfRange(SupercircleError, IndexError):
    pass


class NonHomogeneousInput(SupercircleError, ValueError):
    pass


class WeightMismatch(SupercircleError, ValueError):
    pass


class ResonantDenominator(SupercircleError, ZeroDivisionError):
    pass


class ResonantWeights(SupercircleError, ValueError):
    pass


class UnsupportedIndexPair(SupercircleError, ValueError):
    pass


class IndexOutOfBand(SupercircleError, ValueError):
    pass


class NotInOsp(SupercircleError, ValueError):
    pass


class ResonanceMismatch(SupercircleError, ValueError):
    pass


class WeightShiftMismatch(SupercircleError, ValueError):
    pass


class UnsupportedOrder(SupercircleError, ValueError):
    pass


class WrongWeight(SupercircleError, ValueError):
    pass


class PolyBasisNotIntegrable(SupercircleError, ValueError):
    pass


class WeightSumMismatch(SupercircleError, ValueError):
    pass
