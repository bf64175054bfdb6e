"""Typed errors raised across the toolkit."""


class CurveComplexError(Exception):
    pass


class ComplexityTooLow(CurveComplexError):
    pass


class WrongComplexity(CurveComplexError):
    pass


class InvalidCurve(CurveComplexError):
    """Base for coordinate vectors that do not describe a single essential curve."""


class ParityViolation(InvalidCurve):
    pass


class CornerNegative(InvalidCurve):
    pass


class Disconnected(InvalidCurve):
    pass


class Peripheral(InvalidCurve):
    pass


class NullHomotopic(InvalidCurve):
    pass


class NotSimple(InvalidCurve):
    pass


class IncompatibleTriangulation(CurveComplexError):
    pass


class Unreachable(CurveComplexError):
    pass


class NotFound(CurveComplexError):
    pass


class DoesNotCut(CurveComplexError):
    pass


class VertexMissesZ(CurveComplexError):
    pass


class NotPantsCurve(CurveComplexError):
    pass


class TruncationExhausted(CurveComplexError):
    pass


class BaseNotPants(CurveComplexError):
    pass


class TransversalOutsideXa(CurveComplexError):
    pass


class TransversalNotMinimal(CurveComplexError):
    pass
