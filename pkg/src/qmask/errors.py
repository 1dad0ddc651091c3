"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: invalid input -> 1,
I/O failures (plain OSError) -> 2, internal invariant violations -> 3.
"""


class MaskingError(Exception):
    """Base class for all qmask errors."""


class InvalidInputError(MaskingError, ValueError):
    """Malformed or out-of-domain input (non-finite values, bad ranges, parse failures)."""


class DegenerateInputError(InvalidInputError):
    """Geometrically collapsed input, e.g. coincident states where three distinct ones are needed."""


class EmptyCircleError(InvalidInputError):
    """Requested plane offset |c| > 1: the plane misses the unit sphere."""


class CorruptShareError(InvalidInputError):
    """A secret-sharing share whose reduced state violates the masking structure."""


class InvalidSchemeError(InvalidInputError):
    """A masker scheme below its minimum size or with out-of-range parameters."""


class InvariantViolationError(MaskingError):
    """An internal consistency check failed (e.g. a nonzero operator classifying as full-sphere)."""
