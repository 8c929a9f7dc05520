"""Exception types shared across the package."""


class TiltedError(Exception):
    """Base class for all errors raised by this package."""


class CapExceeded(TiltedError):
    """An exponent denominator would exceed the configured p^D cap."""


class ZeroDivisor(TiltedError):
    """Inversion of a series with no known nonzero term."""


class NonDominantLeading(TiltedError):
    """Inversion requires a unique monomial of minimal valuation."""


class PrecisionRequired(TiltedError):
    """The requested computation produces an infinite expansion and
    needs a finite precision cap."""


class InsufficientGroupAccuracy(TiltedError):
    """A group element is only known modulo p^N and N is too small for
    the requested output precision."""


class DegenerateOrbit(TiltedError):
    """All orbit differences vanish to precision; no exponent can be fitted."""


class PreconditionViolated(TiltedError):
    """A stated precondition of an operation does not hold."""


class NonConvergence(TiltedError):
    """Fixed-point iteration failed to reach the target precision."""


class ParseError(TiltedError):
    """Syntax error in a series, group element, or module file literal."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
