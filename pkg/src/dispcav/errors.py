"""Exception types raised across the package."""


class DispcavError(ValueError):
    """Base class for all domain errors."""


class DimensionMismatch(DispcavError):
    pass


class NotHermitian(DispcavError):
    pass


class InvalidJ(DispcavError):
    pass


class WrongJ(DispcavError):
    pass


class DegenerateCavity(DispcavError):
    pass


class InvalidDensity(DispcavError):
    pass


class OutOfRange(DispcavError):
    pass


class EmptyGrid(DispcavError):
    pass


class UndefinedFrame(DispcavError):
    """Mean spin too small to define the rotated frame."""


class PoleAtPi(DispcavError):
    """theta = pi, where chi = tan(theta/2) diverges."""


class ConsistencyError(ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""
