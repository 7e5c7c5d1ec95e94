"""Bridges between the three models: dancing pairs in the projective
plane, rolling states on S^2 x S^3, and rays of the null cone of the
imaginary split octonions.

The two charts are

    iota:  (A, b) with b A = 1  ->  the null imaginary octonion (1, A; b, -1),
    phi:   (v, q) in S^2 x S^3  ->  the ray of (Re(vq), v + Im(vq); v - Im(vq), ...),

and closed polygons transported through them turn trivial lifted rolling
monodromy into the dancing condition and back.
"""

from dataclasses import dataclass

import numpy as np

from .dancing import (
    DancingPair,
    QDanPoint,
    dancing_residual,
    is_nondegenerate,
    lift_dancing_pair,
)
from .errors import (
    DegenerateConfiguration,
    DegenerateRay,
    InternalInconsistency,
    NonGeneric,
    NontrivialMonodromy,
    NotOnCone,
)
from .geom import (
    QUAT_ONE,
    as_vec3,
    normalize_rep,
    quat,
    quat_distance,
    quat_mul,
)
from .octonion import ImOctonion, oct_form
from .rolling import projective_edge_monodromy

GENERIC_MARGIN = 1e-8  # least |x| (on unit representatives) counted as generic
CONE_TOL = 1e-8


def _check_null(z, tol=CONE_TOL):
    n = z.norm()
    if n <= tol:
        raise DegenerateRay("zero vector spans no ray")
    if abs(oct_form(z)) > tol * n * n:
        raise NotOnCone("point is off the null cone: form = %g" % oct_form(z))


def iota(p):
    """Embed a point of the dancing quadric as a null imaginary octonion
    with x = 1."""
    z = ImOctonion(1.0, p.A, p.b)
    _check_null(z)
    return z


def iota_inv(z, margin=GENERIC_MARGIN):
    """Chart inverse of iota on rays with x bounded away from zero.

    The input ray must avoid the x = 0 hyperplane by at least `margin`
    after normalizing the representative to unit length; otherwise the ray
    has no dancing-chart image and NonGeneric is raised.
    """
    _check_null(z)
    if abs(z.x) < margin * z.norm():
        raise NonGeneric("ray too close to the x = 0 hyperplane")
    return QDanPoint(z.A / z.x, z.b / z.x)


def phi(v, q):
    """Map a rolling state to a null imaginary octonion spanning its ray."""
    v = as_vec3(v)
    vq = quat_mul(quat(0.0, v), np.asarray(q, dtype=float))
    x, im = float(vq[0]), vq[1:]
    return ImOctonion(x, v + im, v - im)


def phi_inv(z, tol=1e-9):
    """Rolling state (v, q) on the ray of z; requires A + b away from zero.

    The representative is rescaled so that |A + b| = 2 (a positive scaling,
    hence the same ray), after which v = (A+b)/2, s = (|A|^2 - |b|^2)/4 and
    w = (A x b)/2 - x v recover the state.
    """
    _check_null(z)
    m = float(np.linalg.norm(z.A + z.b))
    if m <= 1e-8 * z.norm():
        raise DegenerateRay("ray outside the image of the state chart (A + b = 0)")
    zz = z.scale(2.0 / m)
    v = 0.5 * (zz.A + zz.b)
    s = 0.25 * (float(zz.A @ zz.A) - float(zz.b @ zz.b))
    w = 0.5 * np.cross(zz.A, zz.b) - zz.x * v
    q = quat(s, w)
    if abs(np.linalg.norm(q) - 1.0) > max(tol, 1e-7):
        raise InternalInconsistency("recovered quaternion is not unit")
    return v, q


def horizontal_state_directions(v, q, rho=3.0):
    """Basis of the rank-2 rolling plane at a state (v, q) on S^2 x S^3.

    A contact velocity vdot tangent at v forces the angular velocity
    omega = (1 + rho) v x vdot (the unique solution of the no-slip and
    no-twist constraints) and hence qdot = omega q / 2.  Returns two pairs
    (dv, dq) for an orthonormal tangent basis at v.
    """
    v = as_vec3(v)
    q = np.asarray(q, dtype=float)
    u, s, vt = np.linalg.svd(v.reshape(1, 3))
    out = []
    for dv in (vt[1], vt[2]):
        omega = (1.0 + rho) * np.cross(v, dv)
        dq = 0.5 * quat_mul(quat(0.0, omega), q)
        out.append((dv, dq))
    return out


def antipode_equivariance_check(v, q):
    """Norm of phi(-v, q) + phi(v, q); zero because phi is odd in v."""
    return (phi(-as_vec3(v), q) + phi(v, q)).norm()


@dataclass
class RollingLift:
    """A lifted rolling polygon: projective contact classes, their chosen
    unit representatives, and the quaternion state at each vertex."""
    classes: list
    reps: list
    states: list

    @property
    def start_quaternion(self):
        return self.states[0]


def _class_polygon_checks(classes, det_tol=1e-10):
    n = len(classes)
    if n < 3:
        raise ValueError("need at least three contact classes")
    for i in range(n):
        tri = np.array([classes[i], classes[(i + 1) % n], classes[(i + 2) % n]])
        if abs(np.linalg.det(tri)) <= det_tol:
            raise DegenerateConfiguration(
                "consecutive contact classes nearly on a great circle at %d" % i)


def pipeline_forward(classes, q=QUAT_ONE, monodromy_tol=1e-8, dancing_tol=1e-6):
    """From a closed polygon of contact classes (with trivial lifted
    monodromy) and a start quaternion to the closed dancing pair traced by
    the second plane.

    Raises NontrivialMonodromy when the lifted monodromy is not exactly
    trivial, NonGeneric when some vertex state lands on the x = 0
    hyperplane of the cone chart, and DegenerateConfiguration when the
    output fails the genericity the dancing condition needs.
    """
    reps = [normalize_rep(c) for c in classes]
    _class_polygon_checks(reps)
    n = len(reps)
    mus = [projective_edge_monodromy(reps[i], reps[(i + 1) % n]) for i in range(n)]
    g = np.asarray(q, dtype=float) / np.linalg.norm(q)
    states = [g]
    for mu in mus:
        states.append(quat_mul(mu, states[-1]))
    if quat_distance(states[-1], states[0]) > monodromy_tol:
        raise NontrivialMonodromy(
            "lifted monodromy defect %.3g" % quat_distance(states[-1], states[0]))
    points = []
    for v, s in zip(reps, states[:n]):
        points.append(iota_inv(phi(v, s)))
    pair = DancingPair([p.A for p in points], [p.b for p in points], closed=True)
    for i in pair.vertex_indices():
        r = dancing_residual(pair, i)
        if abs(r) > dancing_tol:
            raise InternalInconsistency("dancing residual %.3g at vertex %d" % (r, i))
    if not is_nondegenerate(pair):
        raise DegenerateConfiguration("transported pair fails genericity")
    return pair


def pipeline_inverse(pair, monodromy_tol=1e-8):
    """From a closed dancing pair back to a rolling polygon with trivial
    lifted monodromy.

    The pair is lifted to its horizontal polygon on the quadric, embedded
    in the null cone in the x = 1 chart (which fixes a continuous choice
    of ray representative along every straight horizontal edge), and each
    ray is read as a rolling state.  InternalInconsistency is raised when
    the recovered states fail to be connected by the rolling edge factors
    or the recovered monodromy is not trivial.
    """
    if not pair.closed:
        raise ValueError("inverse transport needs a closed pair")
    poly = lift_dancing_pair(pair)
    states = [phi_inv(iota(p)) for p in poly.points]
    reps = [v for v, _ in states]
    qs = [s for _, s in states]
    n = len(reps)
    for i in range(n):
        v1, v2 = reps[i], reps[(i + 1) % n]
        mu = projective_edge_monodromy(v1, v2)
        expected = quat_mul(mu, qs[i])
        if quat_distance(expected, qs[(i + 1) % n]) > max(monodromy_tol, 1e-7):
            raise InternalInconsistency(
                "edge %d does not transport the recovered state" % i)
    classes = [normalize_rep(v) for v in reps]
    return RollingLift(classes, reps, qs)
