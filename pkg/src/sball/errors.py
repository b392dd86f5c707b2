"""Exception hierarchy for sball."""


class GeometryError(ValueError):
    """Base class for invalid geometric input or degenerate configurations."""


class DegenerateArc(GeometryError):
    pass


class IdenticalCircles(GeometryError):
    pass


class EmptyBody(GeometryError):
    pass


class NoEnclosingHemisphere(GeometryError):
    pass


class DegenerateLune(GeometryError):
    pass


class NotSupporting(GeometryError):
    pass


class DeltaOutOfRange(GeometryError):
    pass


class DiameterExceeded(GeometryError):
    pass


class SeedDiameterExceeded(DiameterExceeded):
    pass


class SeedOutsideCap(GeometryError):
    pass


class EqualEndpoints(GeometryError):
    pass


class NotOnCircle(GeometryError):
    pass


class EndpointsOutsideBody(GeometryError):
    pass


class EvenK(GeometryError):
    pass


class SamplingStalled(RuntimeError):
    pass


class BackHemisphere(GeometryError):
    pass


class InvalidBodyFile(ValueError):
    """A serialized body failed format or invariant validation."""
