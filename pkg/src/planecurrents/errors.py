"""Exception types shared across the package."""


class PlaneCurrentsError(Exception):
    """Base class for every package-specific error."""


class EqualPoints(PlaneCurrentsError):
    """Two points that were required to be distinct coincide."""


class EqualLines(PlaneCurrentsError):
    """Two lines that were required to be distinct coincide."""


class SingularMatrix(PlaneCurrentsError):
    """A projective transformation matrix has determinant zero."""


class UnsupportedDegree(PlaneCurrentsError):
    """Curve degree outside the supported range {1, 2}."""


class ReducibleConic(PlaneCurrentsError):
    """A reducible quadratic form was used where an irreducible conic is
    required (current components must list line pairs as two lines)."""


class NegativeWeight(PlaneCurrentsError):
    """A component weight is negative."""


class WeightExceeded(PlaneCurrentsError):
    """Subtraction amount exceeds the component weight."""


class NegativeScale(PlaneCurrentsError):
    """Scaling factor for a current is negative."""


class NonpositiveThreshold(PlaneCurrentsError):
    """Level-set threshold must be positive."""


class IrrationalIntersection(PlaneCurrentsError):
    """An intersection point has no rational-coordinate representation."""


class AlphaOutOfRange(PlaneCurrentsError):
    """Density threshold alpha must exceed 2/5."""


class CollinearPoints(PlaneCurrentsError):
    """Three points that were required to span a triangle are collinear."""


class BadAlphaPrime(PlaneCurrentsError):
    """Auxiliary parameter alpha' must exceed 2/5."""


class NonUnitMass(PlaneCurrentsError):
    """Operation requires a current of mass exactly 1."""


class FullWeightLine(PlaneCurrentsError):
    """Residual rescaling is undefined when the line carries weight 1."""


class InvalidInstance(PlaneCurrentsError):
    """Cover-instance preconditions are not met."""


class DegenerateSeed(PlaneCurrentsError):
    """A constructive configuration seed violates genericity."""


class InvalidSpec(PlaneCurrentsError):
    """Generator specification is invalid."""


class GridTooLarge(PlaneCurrentsError):
    """Sweep grid exceeds the configured instance cap."""


class ParseError(PlaneCurrentsError):
    """Input document failed validation; carries the offending location."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
