"""Exception types shared across the engine."""


class BracketError(Exception):
    """Base class for all engine errors."""


class NonAffineSeriesError(BracketError):
    """A power series exponent is not affine in its summation index."""


class IllPosedBracketError(BracketError):
    """A bracket degenerated to <0> (zero argument, zero index part)."""


class DenominatorGammaError(BracketError):
    """Attempted to expand a denominator gamma into a bracket series."""


class NonIntegralShiftError(BracketError):
    """Gamma argument shift is not an integer multiple of the index."""


class UnsupportedFunctionError(BracketError):
    """Function id not present in the expansion catalog."""


class SingularContourSystemError(BracketError):
    """No elimination ordering can remove every contour variable."""


class NoAssignmentError(BracketError):
    """The bound-index matrix of a bracket system is singular."""


class NegativeComplexityError(BracketError):
    """A bracket series of negative complexity index has no value."""


class MethodNotApplicableError(BracketError):
    """Every elimination choice is singular or discarded."""


class RegionError(BracketError):
    """Numeric evaluation requested outside the convergence region."""


class PoleError(BracketError):
    """Gamma evaluated at a nonpositive integer."""


class ContourSeparationError(BracketError):
    """No vertical line separates left-moving from right-moving poles."""


class InsufficientDecayError(BracketError):
    """Contour integrand does not decay along any admissible contour."""


class SchemaError(BracketError):
    """Problem file violates the input schema."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
