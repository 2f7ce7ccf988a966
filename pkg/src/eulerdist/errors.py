"""Exception types shared across the package."""


class EulerDistError(Exception):
    """Base class for all package errors."""


class DimensionError(EulerDistError):
    """Ambient dimensions of the operands do not match."""


class ZeroPolynomial(EulerDistError):
    """Operation requires a nonzero polynomial."""


class UnsupportedInput(EulerDistError):
    """Input is outside the structured distribution class."""


class TermNotHyperplaneSupported(EulerDistError):
    """A term has no delta factor, so it is not supported on a coordinate hyperplane."""


class EscalationExceeded(EulerDistError):
    """Log-power escalation exceeded its bound (defensive; should not happen)."""


class QuadratureNoConvergence(EulerDistError):
    """A numerical pairing failed to reach the requested tolerance."""


class PoleOnGrid(EulerDistError):
    """A quadrature grid node hit a zero of the symbol; retry with a shifted grid."""


class DuplicateLambda(EulerDistError):
    """The exponential-shift parameters must be pairwise distinct."""


class ParseError(EulerDistError):
    """Syntax error in a polynomial or distribution expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class CoordinateConflict(EulerDistError):
    """Two incompatible factors refer to the same coordinate in one term."""
