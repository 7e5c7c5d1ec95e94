"""Rolling as an ODE in an Euler-angle chart of the orientation group.

The moving sphere's orientation is charted as g = Rz(gamma) Ry(beta) Rx(alpha)
and the contact point as v(theta, phi) in spherical coordinates.  The
no-slip and no-twist constraints

    (1 + rho) vdot = omega x v,        omega . v = 0,

with omega the space-frame angular velocity of g, determine the Euler-angle
rates along any contact curve; integrating them around a polygon must
reproduce the quaternion monodromy computed algebraically edge by edge.

The chart is singular at beta = +-pi/2 (the rate-to-omega matrix has
determinant cos beta) and the spherical chart at sin theta = 0.  The
integrator avoids both by conjugating every arc into a tilted band around
the equator and by re-seating the Euler chart whenever beta drifts too far.
"""

import math

import numpy as np

from .errors import ChartSingularity, DegenerateEdge, SolveFailure
from .geom import (
    QUAT_ONE,
    as_vec3,
    matrix_to_quat,
    quat_conj,
    quat_mul,
)

RESEAT_COS_BETA = 0.5  # re-seat the chart when |cos beta| drops below this
BAND_TILT = 0.4  # tilt (radians) of the standard arc normal from the pole


def euler_to_rotation(alpha, beta, gamma):
    """Rotation matrix Rz(gamma) Ry(beta) Rx(alpha)."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    return np.array([
        [cb * cg, sa * sb * cg - ca * sg, ca * sb * cg + sa * sg],
        [cb * sg, sa * sb * sg + ca * cg, ca * sb * sg - sa * cg],
        [-sb, sa * cb, ca * cb],
    ])


def rate_to_omega_matrix(beta, gamma):
    """Matrix sending Euler-angle rates (alphadot, betadot, gammadot) to the
    space-frame angular velocity omega = gdot g^-1; det = cos(beta)."""
    cb, sb = math.cos(beta), math.sin(beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    return np.array([
        [cb * cg, -sg, 0.0],
        [cb * sg, cg, 0.0],
        [-sb, 0.0, 1.0],
    ])


def angular_velocity(angles, rates):
    """Space-frame angular velocity of the charted orientation curve."""
    _, beta, gamma = angles
    return rate_to_omega_matrix(beta, gamma) @ np.asarray(rates, dtype=float)


def contact_point(theta, phi):
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def contact_velocity(theta, phi, thetadot, phidot):
    st, ct = math.sin(theta), math.cos(theta)
    cp, sp = math.cos(phi), math.sin(phi)
    return np.array([
        ct * cp * thetadot - st * sp * phidot,
        ct * sp * thetadot + st * cp * phidot,
        -st * thetadot,
    ])


def droll_constraint_residuals(state, rates, rho=3.0, sin_theta_floor=1e-6):
    """The four scalar constraints of the rolling distribution in the chart
    (theta, phi, alpha, beta, gamma): the three components of
    (1 + rho) vdot - omega x v followed by omega . v."""
    theta, phi, alpha, beta, gamma = state
    if abs(math.sin(theta)) < sin_theta_floor:
        raise ChartSingularity("spherical chart singular near the poles")
    thetadot, phidot, alphadot, betadot, gammadot = rates
    v = contact_point(theta, phi)
    vdot = contact_velocity(theta, phi, thetadot, phidot)
    omega = angular_velocity((alpha, beta, gamma), (alphadot, betadot, gammadot))
    slip = (1.0 + rho) * vdot - np.cross(omega, v)
    return np.array([slip[0], slip[1], slip[2], float(omega @ v)])


def solve_euler_rates(beta, gamma, v, vdot, rho=3.0):
    """Euler-angle rates satisfying the constraints at a given contact
    point/velocity.

    The no-slip equation -[v]x M r = (1+rho) vdot has rank 2; the component
    with the largest |v_i| is dropped and replaced by the no-twist row
    v^T M r = 0, and the resulting 3x3 system is solved by Cramer's rule.
    """
    cb, sb = math.cos(beta), math.sin(beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    # columns of M
    m11, m21, m31 = cb * cg, cb * sg, -sb
    m12, m22, m32 = -sg, cg, 0.0
    v1, v2, v3 = v
    c = 1.0 + rho
    # rows of [v]x M (third column of M is e3, so [v]x e3 = (v2, -v1, 0))
    r11 = -v3 * m21 + v2 * m31
    r12 = -v3 * m22 + v2 * m32
    r13 = v2
    r21 = v3 * m11 - v1 * m31
    r22 = v3 * m12 - v1 * m32
    r23 = -v1
    r31 = -v2 * m11 + v1 * m21
    r32 = -v2 * m12 + v1 * m22
    r33 = 0.0
    rows = ((r11, r12, r13, -c * vdot[0]),
            (r21, r22, r23, -c * vdot[1]),
            (r31, r32, r33, -c * vdot[2]))
    drop = max(range(3), key=lambda i: abs(v[i]))
    t1 = v1 * m11 + v2 * m21 + v3 * m31
    t2 = v1 * m12 + v2 * m22 + v3 * m32
    t3 = v3
    eqs = [(t1, t2, t3, 0.0)] + [rows[i] for i in range(3) if i != drop]
    (a1, a2, a3, d1), (b1, b2, b3, d2), (c1, c2, c3, d3) = eqs
    det = (a1 * (b2 * c3 - b3 * c2)
           - a2 * (b1 * c3 - b3 * c1)
           + a3 * (b1 * c2 - b2 * c1))
    if abs(det) < 1e-12:
        raise SolveFailure("rate system singular (chart too close to beta = pi/2?)")
    da = (d1 * (b2 * c3 - b3 * c2)
          - a2 * (d2 * c3 - b3 * d3)
          + a3 * (d2 * c2 - b2 * d3))
    db = (a1 * (d2 * c3 - b3 * d3)
          - d1 * (b1 * c3 - b3 * c1)
          + a3 * (b1 * d3 - d2 * c1))
    dc = (a1 * (b2 * d3 - d2 * c2)
          - a2 * (b1 * d3 - d2 * c1)
          + d1 * (b1 * c2 - b2 * c1))
    return da / det, db / det, dc / det


def _rotation_taking(n, n0):
    """A rotation matrix sending the unit vector n to the unit vector n0."""
    n = as_vec3(n)
    n0 = as_vec3(n0)
    c = float(n @ n0)
    axis = np.cross(n, n0)
    s = np.linalg.norm(axis)
    if s < 1e-12:
        if c > 0:
            return np.eye(3)
        # pick any axis orthogonal to n for a half turn
        k = np.eye(3)[int(np.argmin(np.abs(n)))]
        axis = np.cross(n, k)
        axis /= np.linalg.norm(axis)
        return 2.0 * np.outer(axis, axis) - np.eye(3)
    axis = axis / s
    K = np.array([[0.0, -axis[2], axis[1]],
                  [axis[2], 0.0, -axis[0]],
                  [-axis[1], axis[0], 0.0]])
    return np.eye(3) + s * K + (1.0 - c) * (K @ K)


def integrate_arc(v_start, normal, angle, rho=3.0, steps=10000, record=None):
    """Integrate the rolling ODE along a great-circle arc.

    The arc starts at v_start, turns about the given unit normal by the
    given angle, and the moving sphere starts at the identity orientation.
    Returns (rotation matrix, lifted quaternion) of the resulting motion.

    The arc is first conjugated so that its normal makes a fixed small
    angle with the pole; rolling about such a normal keeps the Euler chart
    uniformly far from its beta singularity, and the result is conjugated
    back at the end.  `record`, if a list, receives (t, state, rates)
    samples in the original frame's spherical chart for diagnostics.
    """
    v_start = as_vec3(v_start)
    normal = as_vec3(normal)
    if abs(float(normal @ v_start)) > 1e-9:
        raise DegenerateEdge("arc normal must be orthogonal to the start point")
    n0 = np.array([math.sin(BAND_TILT), 0.0, math.cos(BAND_TILT)])
    Rc = _rotation_taking(normal, n0)
    ea = Rc @ v_start
    eb = np.cross(n0, ea)

    h = angle / steps
    # contact point and velocity at half-step resolution, precomputed
    ts = np.arange(2 * steps + 1) * (0.5 * h)
    cs, ss = np.cos(ts), np.sin(ts)
    vs = np.outer(cs, ea) + np.outer(ss, eb)
    vds = np.outer(-ss, ea) + np.outer(cs, eb)

    y = [0.0, 0.0, 0.0]
    R_off = np.eye(3)
    q_prev = QUAT_ONE.copy()
    sample_every = max(1, steps // max(8, int(abs(angle) * (rho + 1.0) / 0.5) + 1))

    def rhs(k, state):
        v = vs[k]
        vd = vds[k]
        return solve_euler_rates(state[1], state[2], v, vd, rho)

    for k in range(steps):
        i0, i1, i2 = 2 * k, 2 * k + 1, 2 * k + 2
        k1 = rhs(i0, y)
        y2 = [y[j] + 0.5 * h * k1[j] for j in range(3)]
        k2 = rhs(i1, y2)
        y3 = [y[j] + 0.5 * h * k2[j] for j in range(3)]
        k3 = rhs(i1, y3)
        y4 = [y[j] + h * k3[j] for j in range(3)]
        k4 = rhs(i2, y4)
        y = [y[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
             for j in range(3)]
        if abs(math.cos(y[1])) < RESEAT_COS_BETA:
            R_off = euler_to_rotation(*y) @ R_off
            y = [0.0, 0.0, 0.0]
            q_prev = _continue_quat(R_off, q_prev)
        elif (k + 1) % sample_every == 0:
            q_prev = _continue_quat(euler_to_rotation(*y) @ R_off, q_prev)
        if record is not None:
            v = vs[i2]
            theta = math.acos(max(-1.0, min(1.0, v[2])))
            phi = math.atan2(v[1], v[0])
            rates = rhs(i2, y)
            vd = vds[i2]
            st2 = v[0] * v[0] + v[1] * v[1]
            record.append((
                ts[i2],
                (theta, phi, y[0], y[1], y[2]),
                (-vd[2] / math.sqrt(st2) if st2 > 1e-12 else 0.0,
                 (v[0] * vd[1] - v[1] * vd[0]) / st2 if st2 > 1e-12 else 0.0,
                 rates[0], rates[1], rates[2]),
            ))

    R_total = euler_to_rotation(*y) @ R_off
    q_total = _continue_quat(R_total, q_prev)
    # conjugate back to the original frame
    R = Rc.T @ R_total @ Rc
    qc = matrix_to_quat(Rc)
    qlift = quat_mul(quat_conj(qc), quat_mul(q_total, qc))
    return R, qlift


def _continue_quat(R, q_prev):
    q = matrix_to_quat(R)
    if float(q @ q_prev) < 0.0:
        q = -q
    return q


def integrate_roll(v1, v2, rho=3.0, steps=10000, record=None):
    """Integrate the rolling ODE along the minor arc from v1 to v2."""
    v1 = as_vec3(v1)
    v2 = as_vec3(v2)
    c = np.cross(v1, v2)
    s = np.linalg.norm(c)
    if s <= 1e-12:
        raise DegenerateEdge("arc endpoints parallel or antipodal")
    angle = math.atan2(s, float(v1 @ v2))
    return integrate_arc(v1, c / s, angle, rho=rho, steps=steps, record=record)


def integrate_polygon(poly, steps_per_edge=10000):
    """Integrate around a spherical polygon edge by edge; returns the total
    (rotation matrix, lifted quaternion) monodromy."""
    R = np.eye(3)
    q = QUAT_ONE.copy()
    for a, b in poly.edges():
        Re, qe = integrate_roll(a, b, rho=poly.rho, steps=steps_per_edge)
        R = Re @ R
        q = quat_mul(qe, q)
    return R, q


def full_equator(rho=3.0, steps=20000):
    """Roll once around the full equator; at ratio 3 the lifted monodromy
    is +1, at ratio 2 it is -1."""
    return integrate_arc(np.array([1.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0]),
                         2.0 * math.pi, rho=rho, steps=steps)
