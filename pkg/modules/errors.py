# modules/errors.py
"""Exception hierarchy for mvforge.

Every error raised on purpose by the library derives from MVForgeError, and
also from the builtin it refines, so callers can catch either one.
"""


class MVForgeError(Exception):
    """Base class for all mathematical failures reported by mvforge."""


class FieldMismatchError(MVForgeError, ValueError):
    """Two quadratic-field values with different D were combined."""


class RationalInputError(MVForgeError, ValueError):
    """A value was rational where an irrational one is required, or the reverse."""


class ContinuedFractionExhaustedError(MVForgeError, IndexError):
    """More partial quotients were requested than a finite expansion holds."""


class DimensionError(MVForgeError, ValueError):
    """Ambient dimension or shape is outside the supported range."""


class CarrierMismatchError(MVForgeError, ValueError):
    """Two piecewise-linear objects do not live on the same carrier."""


class OutsideCarrierError(MVForgeError, ValueError):
    """A point lies outside the carrier of a complex."""


class TermSyntaxError(MVForgeError, ValueError):
    """A term could not be parsed. ``position`` is the 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ArityError(TermSyntaxError):
    """A term uses a variable beyond its declared arity."""


class ContinuityError(MVForgeError, ValueError):
    """Affine pieces disagree on a shared vertex."""


class RangeViolationError(MVForgeError, ValueError):
    """A value or map leaves its required range."""


class EmptyRegionError(MVForgeError, ValueError):
    """An open region given by inequalities has no interior in the cube."""


class ZeroFunctionError(MVForgeError, ValueError):
    """A nonzero function was required."""


class DegenerateSegmentError(MVForgeError, ValueError):
    """A segment direction is the zero vector."""


class SizeBoundError(MVForgeError, ValueError):
    """An exhaustive search exceeds its configured size bound."""


class UnsupportedDescriptorError(MVForgeError, NotImplementedError):
    """A descriptor variant has no implementation for the requested operation."""


class DepthBoundError(MVForgeError, ValueError):
    """A Bratteli diagram depth exceeds the configured cap."""


class NotYetPresentError(MVForgeError, ValueError):
    """A fraction does not appear in the diagram at the requested depth."""


class NotUnimodularError(MVForgeError, ValueError):
    """An integer matrix does not have determinant +1 or -1."""


class UndecidedOrderError(MVForgeError, ArithmeticError):
    """A comparison could not be decided at the available precision."""
