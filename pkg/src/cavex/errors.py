"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Operand lies outside the mathematical domain of an operation."""


class UnsupportedK(ValueError):
    """Polygon start not constructible by radicals alone."""


class PrecisionExhausted(RuntimeError):
    """Interval widths grew past the point where the enclosure means anything.

    Carries the last valid trace (if any) in ``trace``.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class ParseError(ValueError):
    """Expression syntax error with byte offset and expected-token set."""

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = tuple(expected)


class NotCavex(ValueError):
    """Span contains an inflection, so the tangent construction is invalid."""


class TooOscillatory(ValueError):
    """Detection grid too coarse to certify a convex/concave segmentation."""


class DuplicatePoint(ValueError):
    """Refinement point already present in the partition."""


class DidNotConverge(RuntimeError):
    """Refinement hit the stage cap before reaching the gap tolerance.

    Carries the partial result in ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotNested(ValueError):
    """Curve pair is not nested between the chord and the outer curve."""


class MaxDepthExceeded(RuntimeError):
    """Adaptive quadrature recursion exceeded its depth cap."""


class NonMonotoneCurve(ValueError):
    """Curve is not strictly monotone where the operation requires it."""
