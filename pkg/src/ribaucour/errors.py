"""Exception hierarchy.

GeometryError covers violated geometric preconditions and degeneracies;
SceneError covers scene-file problems.  The CLI maps GeometryError to exit
code 2 (validation) or 3 (construction) and SceneError / IO failures to 4.
"""


class GeometryError(Exception):
    """A geometric precondition is violated or a configuration is degenerate."""


class ZeroVector(GeometryError):
    pass


class NotLightlike(GeometryError):
    pass


class ParabolicComplex(GeometryError):
    pass


class LightlikeComplex(ParabolicComplex):
    pass


class TangentSpheres(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class RankNot3(GeometryError):
    pass


class NotCoplanar(GeometryError):
    pass


class DegenerateBasis(GeometryError):
    pass


class DegenerateDenominator(GeometryError):
    pass


class SphereInComplex(GeometryError):
    pass


class PlaneComplex(GeometryError):
    pass


class NotElliptic(GeometryError):
    pass


class DisjointElements(GeometryError):
    pass


class EqualElements(GeometryError):
    pass


class DegenerateElement(GeometryError):
    pass


class BadId(GeometryError):
    pass


class KernelDegenerate(GeometryError):
    pass


class InvalidLambda(GeometryError):
    pass


class TangencyCreated(GeometryError):
    pass


class UmbilicFace(GeometryError):
    pass


class DegenerateChoice(GeometryError):
    pass


class SphereNotInElement(GeometryError):
    pass


class ClosureFailure(GeometryError):
    pass


class PointSphereInput(GeometryError):
    pass


class NotAPair(GeometryError):
    pass


class InconsistentPartner(GeometryError):
    pass


class WrongSignature(GeometryError):
    pass


class RankDefect(GeometryError):
    pass


class IntersectionDegenerate(GeometryError):
    pass


class LightlikeDiagonal(GeometryError):
    pass


class CircularQuadruple(GeometryError):
    pass


class NotTwoChannel(GeometryError):
    pass


class DecodeDegenerate(GeometryError):
    pass


class SceneError(Exception):
    """Malformed or inconsistent scene file."""
