"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`GeometryError`, itself a :class:`ValueError`, so callers can catch
bad-input conditions with a single clause.
"""


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class NonFinite(GeometryError):
    pass


class TooFewVertices(GeometryError):
    pass


class NotEqualArea(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class DegenerateScale(GeometryError):
    pass


class DegenerateMap(GeometryError):
    pass


class DegenerateAsymptotes(GeometryError):
    pass


class FrameDegenerate(GeometryError):
    pass


class NonConvexIntermediate(GeometryError):
    """A curvature value breaks convexity before the polygon can close."""


class OutOfRegime(GeometryError):
    pass


class NonConvexSample(GeometryError):
    """The curve integrand ``[g', g'']`` went negative."""


class IntersectionNotFound(GeometryError):
    pass


class NotNormalized(GeometryError):
    """Operation requires a polygon scaled so that ``l == 1``."""


class NotParallel(GeometryError):
    pass


class EmptyScene(GeometryError):
    pass


class InternalInvariantViolation(RuntimeError):
    """A proven geometric property failed; indicates a bug, not bad input."""
