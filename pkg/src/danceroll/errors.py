"""Exception hierarchy shared across the package."""


class DancerollError(Exception):
    """Base class for all library errors."""


class GeometryError(DancerollError):
    pass


class NotCollinear(GeometryError):
    pass


class DegenerateQuadruple(GeometryError):
    pass


class NonUnitAxis(GeometryError):
    pass


class AlgebraError(DancerollError):
    pass


class NotNull(AlgebraError):
    pass


class ZeroOctonion(AlgebraError):
    pass


class DancingError(DancerollError):
    pass


class IdenticalPoints(DancingError):
    pass


class NotInscribed(DancingError):
    pass


class DegenerateDecomposition(DancingError):
    pass


class ScaleUndefined(DancingError):
    pass


class NotDancing(DancingError):
    pass


class ClosureFailure(DancingError):
    pass


class DegenerateConfiguration(DancingError):
    pass


class SamplingExhausted(DancingError):
    pass


class RollingError(DancerollError):
    pass


class DegenerateEdge(RollingError):
    pass


class ParameterOutOfRange(RollingError):
    pass


class NotTangent(RollingError):
    pass


class IdenticalClasses(RollingError):
    pass


class BridgeError(DancerollError):
    pass


class NotOnCone(BridgeError):
    pass


class DegenerateRay(BridgeError):
    pass


class NontrivialMonodromy(BridgeError):
    pass


class NonGeneric(BridgeError):
    pass


class InternalInconsistency(BridgeError):
    pass


class SymmetryError(DancerollError):
    pass


class NotSymmetricTraceless(SymmetryError):
    pass


class ChartSingularity(DancerollError):
    pass


class SolveFailure(DancerollError):
    pass
