"""The dancing quadric {(A, b) : bA = 1}, its rank-2 distribution, the
dancing condition on inscribed polygon pairs, and the lifting of dancing
pairs to horizontal polygons.

Conventions.  A dancing pair consists of a polygon with vertices
A_1..A_n (projective points) and a polygon with edges b_1..b_n
(projective lines).  Writing B_i = b_i ^ b_{i+1} for consecutive edge
intersections and a_i = A_i A_{i+1} for the vertex chords, the pair is
*inscribed* when each B_i lies on a_i.  The dancing condition at vertex i
is

    [A_{i+1}, B_i, A_i, D] + [A_{i+1}, B_{i+1}, A_{i+2}, C] = 0

with C = b_i ^ a_{i+1} and D = b_{i+2} ^ a_i, a sum of two cross-ratios
of collinear quadruples.  Horizontal segments on the quadric are the
affine lines with b_2 - b_1 = A_1 x A_2.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ClosureFailure,
    DancingError,
    DegenerateConfiguration,
    DegenerateDecomposition,
    DegenerateQuadruple,
    IdenticalPoints,
    NotCollinear,
    NotDancing,
    NotInscribed,
    SamplingExhausted,
    ScaleUndefined,
)
from .geom import (
    TOL,
    as_vec3,
    covec_cross,
    cross_ratio,
    fourth_point_with_cross_ratio,
    normalize_rep,
    proj_distance,
    vec_cross,
)

DANCING_TOL = 1e-6  # default acceptance level for the dancing residual
NONDEG_DET = 1e-10  # non-degeneracy: |det| of consecutive normalized triples


@dataclass(frozen=True)
class QDanPoint:
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", as_vec3(self.A))
        object.__setattr__(self, "b", as_vec3(self.b))

    def membership_residual(self):
        return abs(float(self.b @ self.A) - 1.0)

    def coords(self):
        return np.concatenate([self.A, self.b])

    def __sub__(self, other):
        return np.concatenate([self.A - other.A, self.b - other.b])

    def distance(self, other):
        return float(np.linalg.norm(self - other))


@dataclass
class HorizontalPolygon:
    points: list
    closed: bool = False

    def __len__(self):
        return len(self.points)


@dataclass
class DancingPair:
    """Vertex representatives A[i] and edge representatives b[i]; projective
    data, so representatives are only defined up to scale."""
    A: list
    b: list
    closed: bool = False

    def __post_init__(self):
        self.A = [as_vec3(a) for a in self.A]
        self.b = [as_vec3(bb) for bb in self.b]
        if len(self.A) != len(self.b):
            raise ValueError("vertex and edge lists must have equal length")

    def __len__(self):
        return len(self.A)

    def vertex_indices(self):
        """Indices i at which the dancing condition applies."""
        n = len(self)
        return range(n) if self.closed else range(n - 2)

    def edge_indices(self):
        """Indices i at which the inscribed condition (B_i on a_i) applies."""
        n = len(self)
        return range(n) if self.closed else range(n - 1)


def qdan_project(p):
    """Projective classes of a quadric point."""
    return normalize_rep(p.A), normalize_rep(p.b)


def dan_distribution_basis(p):
    """Two independent tangent directions (Adot, bdot) spanning the rank-2
    plane at p: bdot = A x Adot with b Adot = 0 (tangency to the quadric
    is then automatic, since (A x Adot) A = 0)."""
    b = p.b / np.linalg.norm(p.b)
    # two unit vectors spanning ker(b)
    u, s, vt = np.linalg.svd(b.reshape(1, 3))
    k1, k2 = vt[1], vt[2]
    return [(k1, np.cross(p.A, k1)), (k2, np.cross(p.A, k2))]


def horizontal_residual(p, q):
    """Norm of (b_2 - b_1) - A_1 x A_2 for two quadric points."""
    return float(np.linalg.norm((q.b - p.b) - np.cross(p.A, q.A)))


def is_horizontal_segment(p, q, tol=DANCING_TOL):
    if p.distance(q) <= TOL:
        raise IdenticalPoints("segment endpoints coincide")
    return horizontal_residual(p, q) <= tol


def _wrap(seq, i):
    return seq[i % len(seq)]


def _pair_vertex_data(pair, i):
    n = len(pair)
    if pair.closed:
        idx = [i % n, (i + 1) % n, (i + 2) % n]
    else:
        if i > n - 3:
            raise IndexError("open pair has no dancing condition at index %d" % i)
        idx = [i, i + 1, i + 2]
    A = [pair.A[j] for j in idx]
    b = [pair.b[j] for j in idx]
    return A, b


def dancing_residual(pair, i, tol=TOL):
    """Value of the dancing condition at vertex i (zero iff it holds)."""
    (A1, A2, A3), (b1, b2, b3) = _pair_vertex_data(pair, i)
    B1 = covec_cross(b1, b2)
    B2 = covec_cross(b2, b3)
    a1 = vec_cross(A1, A2)
    a2 = vec_cross(A2, A3)
    C = covec_cross(b1, a2)
    D = covec_cross(b3, a1)
    try:
        return cross_ratio(A2, B1, A1, D, tol) + cross_ratio(A2, B2, A3, C, tol)
    except (NotCollinear, DegenerateQuadruple, ValueError) as exc:
        raise DegenerateConfiguration(str(exc)) from exc


def inscribed_residual(pair, i):
    """Distance certificate that B_i = b_i ^ b_{i+1} lies on the chord a_i."""
    n = len(pair)
    j = (i + 1) % n
    B = covec_cross(pair.b[i], pair.b[j])
    a = vec_cross(pair.A[i], pair.A[j])
    return abs(float(normalize_rep(a) @ normalize_rep(B)))


def nondegeneracy_report(pair):
    """Certificates of the genericity assumptions: each A_i off b_i,
    consecutive vertex triples non-collinear, consecutive edge triples
    non-concurrent.  Returns the three lists of |det|-style margins."""
    n = len(pair)
    off_edge = [abs(float(normalize_rep(pair.b[i]) @ normalize_rep(pair.A[i])))
                for i in range(n)]
    rng_v = range(n) if pair.closed else range(n - 2)
    tri_v = [abs(np.linalg.det(np.array([normalize_rep(_wrap(pair.A, i + k))
                                         for k in range(3)]))) for i in rng_v]
    tri_b = [abs(np.linalg.det(np.array([normalize_rep(_wrap(pair.b, i + k))
                                         for k in range(3)]))) for i in rng_v]
    return off_edge, tri_v, tri_b


def is_nondegenerate(pair, det_tol=NONDEG_DET):
    off_edge, tri_v, tri_b = nondegeneracy_report(pair)
    return (min(off_edge) > det_tol and
            (not tri_v or min(tri_v) > det_tol) and
            (not tri_b or min(tri_b) > det_tol))


def lift_inscribed_2gon(a1, b1, a2, b2, tol=TOL):
    """The unique horizontal lift of an inscribed 2-gon.

    Representatives are first normalized to b_i A_i = 1; the chord normal
    A_1 x A_2 decomposes as lam1 b_1 + lam2 b_2 (this is where the
    inscribed hypothesis enters), and the cube-root rescalings
    x_1 = cbrt(lam2 / lam1^2), x_2 = -cbrt(lam1 / lam2^2) produce the lift.
    """
    a1 = normalize_rep(a1)
    a2 = normalize_rep(a2)
    b1 = normalize_rep(b1)
    b2 = normalize_rep(b2)
    if proj_distance(a1, a2) <= tol or proj_distance(b1, b2) <= tol:
        raise DegenerateDecomposition("2-gon needs distinct vertices and edges")
    s1 = float(b1 @ a1)
    s2 = float(b2 @ a2)
    if abs(s1) <= tol or abs(s2) <= tol:
        raise DegenerateDecomposition("a vertex lies on its own edge")
    A1, B1 = a1 / s1, b1
    A2, B2 = a2 / s2, b2
    chord = np.cross(A1, A2)
    m = np.column_stack([B1, B2])
    lam, res, rank, sv = np.linalg.lstsq(m, chord, rcond=None)
    if np.linalg.norm(m @ lam - chord) > 1e-7 * max(1.0, np.linalg.norm(chord)):
        raise NotInscribed("edge intersection is off the vertex chord")
    lam1, lam2 = lam
    if abs(lam1) <= tol or abs(lam2) <= tol:
        raise DegenerateDecomposition("chord normal degenerate in the edge pencil")
    x1 = np.cbrt(lam2 / lam1 ** 2)
    x2 = -np.cbrt(lam1 / lam2 ** 2)
    return QDanPoint(x1 * A1, B1 / x1), QDanPoint(x2 * A2, B2 / x2)


def extend_horizontal(prev, a, b, tol=TOL):
    """Extend a horizontal chain by one vertex.

    Normalizes representatives B of b and A of a with B A = 1, sets
    x = B . A_prev and returns the lift (x A, B / x) together with the
    horizontality defect of the new segment.  The defect vanishes exactly
    when the dancing condition held at the previous vertex.
    """
    B = normalize_rep(b)
    A0 = normalize_rep(a)
    s = float(B @ A0)
    if abs(s) <= tol:
        raise ScaleUndefined("new vertex lies on the new edge")
    A = A0 / s
    x = float(B @ prev.A)
    if abs(x) <= tol:
        raise ScaleUndefined("previous vertex lies on the new edge")
    lifted = QDanPoint(x * A, B / x)
    return lifted, horizontal_residual(prev, lifted)


def lift_dancing_pair(pair, tol=DANCING_TOL):
    """Lift a dancing pair to the horizontal polygon it projects from.

    The first edge is lifted by the 2-gon solution, every further vertex
    by extension; each extension's horizontality defect certifies the
    dancing condition at the preceding vertex.  Closed pairs additionally
    get two closure certificates: the wrap-around segment must be
    horizontal and re-extending past the last vertex must reproduce the
    first lift.
    """
    n = len(pair)
    if n < 2:
        raise ValueError("need at least two vertices")
    for i in pair.vertex_indices():
        r = dancing_residual(pair, i)
        if abs(r) > tol:
            raise NotDancing("dancing residual %.3g at vertex %d" % (r, i))
    q1, q2 = lift_inscribed_2gon(pair.A[0], pair.b[0], pair.A[1], pair.b[1])
    points = [q1, q2]
    for i in range(2, n):
        nxt, defect = extend_horizontal(points[-1], pair.A[i], pair.b[i])
        if defect > 1e-5:
            raise NotDancing("extension defect %.3g at vertex %d" % (defect, i))
        points.append(nxt)
    if pair.closed:
        wrap = horizontal_residual(points[-1], points[0])
        if wrap > 1e-8:
            raise ClosureFailure("closing segment defect %.3g" % wrap)
        redo, defect = extend_horizontal(points[-1], pair.A[0], pair.b[0])
        if redo.distance(points[0]) > 1e-8 or defect > 1e-8:
            raise ClosureFailure("first vertex not reproduced on wrap-around")
    return HorizontalPolygon(points, closed=pair.closed)


def project_polygon(poly):
    """DancingPair of projective classes under a horizontal polygon."""
    return DancingPair([p.A.copy() for p in poly.points],
                       [p.b.copy() for p in poly.points],
                       closed=poly.closed)


# ---------------------------------------------------------------------------
# randomized constructions


def _unit(rng):
    while True:
        v = rng.standard_normal(3)
        n = np.linalg.norm(v)
        if n > 1e-3:
            return v / n


def random_qdan_point(rng):
    A = _unit(rng) * rng.uniform(0.7, 1.4)
    c = _unit(rng)
    c = c - (c @ A) / (A @ A) * A
    b = A / (A @ A) + 0.7 * c
    return QDanPoint(A, b)


def random_horizontal_chain(n, seed=None, rng=None, step=(0.4, 1.2)):
    """A horizontal n-chain built from random rank-2 plane steps; resamples
    until consecutive vertex triples are safely non-collinear."""
    rng = np.random.default_rng(seed) if rng is None else rng
    for _ in range(200):
        pts = [random_qdan_point(rng)]
        ok = True
        for _ in range(n - 1):
            (d1, e1), (d2, e2) = dan_distribution_basis(pts[-1])
            c = _unit(rng)[:2]
            t = rng.uniform(*step) * rng.choice([-1.0, 1.0])
            dA = t * (c[0] * d1 + c[1] * d2)
            db = t * (c[0] * e1 + c[1] * e2)
            pts.append(QDanPoint(pts[-1].A + dA, pts[-1].b + db))
            if len(pts) >= 3:
                det = np.linalg.det(np.array([normalize_rep(p.A) for p in pts[-3:]]))
                if abs(det) < 5e-3:
                    ok = False
                    break
        if ok:
            return HorizontalPolygon(pts, closed=False)
    raise SamplingExhausted("could not sample a generic horizontal chain")


def _solve_next_edge_raw(A, bs, i):
    """The unique edge b_{i+2} making the dancing condition hold at vertex i,
    given A_i..A_{i+2}, b_i, b_{i+1}.

    The inscribed condition pins B_{i+1} = b_{i+1} ^ a_{i+1}, so b_{i+2}
    runs through a pencil of lines; the dancing condition prescribes the
    cross-ratio of the fourth point D on a_i, which determines D, and
    b_{i+2} is the line joining B_{i+1} to D.
    """
    A1, A2, A3 = A[i], A[i + 1], A[i + 2]
    b1, b2 = bs[i], bs[i + 1]
    a1 = vec_cross(A1, A2)
    a2 = vec_cross(A2, A3)
    B1 = covec_cross(b1, b2)
    B2 = covec_cross(b2, a2)
    C = covec_cross(b1, a2)
    k = -cross_ratio(A2, B2, A3, C)
    D = fourth_point_with_cross_ratio(A2, B1, A1, k)
    return vec_cross(B2, D)


def random_dancing_chain(n, seed=None, max_tries=200):
    """A random open dancing chain with n vertices.

    Vertices and the first edge are sampled uniformly on spheres of
    representatives with rejection; the second edge is a generic member of
    the pencil through b_1 ^ a_1; the remaining edges are determined
    recursively by the dancing condition (solved exactly through the
    prescribed-cross-ratio fourth point).
    """
    if n < 2:
        raise ValueError("a chain needs at least 2 vertices")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        try:
            A = [_unit(rng) for _ in range(n)]
            ok = all(abs(np.linalg.det(np.array(A[i:i + 3]))) > 5e-3
                     for i in range(n - 2))
            if not ok:
                continue
            b1 = _unit(rng)
            if abs(b1 @ A[0]) < 5e-2 or abs(b1 @ A[1]) < 5e-2:
                continue
            P = covec_cross(b1, vec_cross(A[0], A[1]))
            b2 = vec_cross(P, _unit(rng))
            if (np.linalg.norm(b2) < 1e-3 or proj_distance(b1, b2) < 1e-2
                    or abs(normalize_rep(b2) @ normalize_rep(A[1])) < 5e-2):
                continue
            bs = [b1, normalize_rep(b2)]
            good = True
            for i in range(n - 2):
                nxt = normalize_rep(_solve_next_edge_raw(A, bs, i))
                if abs(nxt @ normalize_rep(A[i + 2])) < 5e-2:
                    good = False
                    break
                det = np.linalg.det(np.array([normalize_rep(v)
                                              for v in (bs[-2], bs[-1], nxt)]))
                if abs(det) < 5e-3:
                    good = False
                    break
                bs.append(nxt)
            if not good:
                continue
            pair = DancingPair(A, bs, closed=False)
            if not is_nondegenerate(pair, det_tol=1e-4):
                continue
            if any(abs(dancing_residual(pair, i)) > 1e-9
                   for i in pair.vertex_indices()):
                continue
            if any(inscribed_residual(pair, i) > 1e-9 for i in pair.edge_indices()):
                continue
            return pair
        except (DancingError, DegenerateQuadruple, NotCollinear):
            continue
    raise SamplingExhausted("no generic dancing chain found in %d tries" % max_tries)


# ---------------------------------------------------------------------------
# SL3 normal form for horizontal 3-chains


def apply_sl3(S, p):
    """The action (A, b) -> (S A, b S^-1) of a unimodular matrix."""
    return QDanPoint(S @ p.A, np.linalg.solve(S.T, p.b))


def normalize_horizontal_3chain(q1, q2, q3, tol=TOL):
    """A unimodular S putting a horizontal 3-chain in normal form.

    After the move, q2 = (e1, e^1), q1 = q2 + (e2, e^3) and
    q3 = q2 + a (e3, -e^2) for the modulus a returned alongside S.
    """
    A2, b2 = q2.A, q2.b
    u, s, vt = np.linalg.svd(b2.reshape(1, 3))
    w2, w3 = vt[1], vt[2]
    S0inv = np.column_stack([A2, w2, w3])
    d = np.linalg.det(S0inv)
    if abs(d) <= tol:
        raise DegenerateConfiguration("vertex on its own edge")
    S0inv[:, 1] /= d
    S0 = np.linalg.inv(S0inv)
    c1 = (S0 @ (q1.A - A2))[1:]
    c3 = (S0 @ (q3.A - A2))[1:]
    P = np.column_stack([c1, c3])
    a = np.linalg.det(P)
    if abs(a) <= tol:
        raise DegenerateConfiguration("chain directions are parallel")
    N = np.diag([1.0, a]) @ np.linalg.inv(P)
    M = np.eye(3)
    M[1:, 1:] = N
    return M @ S0, a


def solve_horizontal_quad(q1, q2, q3):
    """The unique q4 joined horizontally to both q1 and q3 of a horizontal
    3-chain.  The two segment conditions give a linear line equation
    (A1 - A3) x A4 = b3 - b1 whose pencil is cut down to a point by the
    quadric equation b4 A4 = 1 (which turns out to be linear along the
    pencil)."""
    d = q1.A - q3.A
    r = q3.b - q1.b
    dd = float(d @ d)
    if dd <= TOL:
        raise DegenerateConfiguration("outer vertices coincide")
    if abs(d @ r) > 1e-8 * max(1.0, np.linalg.norm(r)):
        raise DegenerateConfiguration("incompatible two-sided constraints")
    A4p = np.cross(r, d) / dd
    slope = float(q1.b @ d)
    if abs(slope) <= TOL:
        raise DegenerateConfiguration("pencil parallel to the quadric")
    t = (1.0 - float(q1.b @ A4p)) / slope
    A4 = A4p + t * d
    b4 = q1.b + np.cross(q1.A, A4)
    return QDanPoint(A4, b4)
