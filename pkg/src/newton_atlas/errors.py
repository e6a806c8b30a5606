"""Exception hierarchy for newton_atlas."""


class NewtonAtlasError(Exception):
    """Base class for all library-specific errors."""


class NonConvergence(NewtonAtlasError):
    """Root finder failed to meet its residual tolerance within the iteration cap."""


class DegreeMismatch(NewtonAtlasError):
    """Reduced Newton map degree disagrees with the closed-form degree prediction."""


class DegenerateMap(NewtonAtlasError):
    """Predicted Newton map degree is zero or negative."""


class NotFixed(NewtonAtlasError):
    """Multiplier requested at a point that is not a fixed point."""


class ParabolicPoint(NewtonAtlasError):
    """Residue index 1/(1-lambda) requested at a fixed point with multiplier 1."""


class LoopTooLarge(NewtonAtlasError):
    """Contour for the residue integral would enclose another fixed point."""


class NonSimpleFixedPoint(NewtonAtlasError):
    """Two fixed points coincide, or a multiplier is too close to 1."""


class DegenerateTriple(NewtonAtlasError):
    """Three-point Moebius construction given a repeated point."""


class NotQuadratic(NewtonAtlasError):
    """Quadratic classification requested for a map of degree != 2."""


class NotCubic(NewtonAtlasError):
    """Cubic polynomial-conjugacy analysis requested for a map of degree != 3."""


class NotSuperattracting(NewtonAtlasError):
    """Exceptional-point check requires a superattracting fixed point."""


class TooFewPoints(NewtonAtlasError):
    """Affine normalization needs at least two distinguished finite points."""


class UnsupportedDegree(NewtonAtlasError):
    """Operation is only defined for a restricted range of map degrees."""
