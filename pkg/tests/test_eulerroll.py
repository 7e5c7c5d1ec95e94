import math

import numpy as np
import pytest

from danceroll import eulerroll as er
from danceroll import rolling as rl
from danceroll.errors import ChartSingularity, DegenerateEdge
from danceroll.geom import quat_distance, quat_to_matrix

EX, EY, EZ = np.eye(3)


class TestChart:
    def test_euler_to_rotation_factors(self):
        def rx(a):
            c, s = math.cos(a), math.sin(a)
            return np.array([[1, 0, 0], [0, c, -s], [0, s, c]])

        def ry(a):
            c, s = math.cos(a), math.sin(a)
            return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]])

        def rz(a):
            c, s = math.cos(a), math.sin(a)
            return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])

        rng = np.random.default_rng(0)
        for _ in range(20):
            a, b, g = rng.uniform(-3, 3, 3)
            assert np.allclose(er.euler_to_rotation(a, b, g),
                               rz(g) @ ry(b) @ rx(a), atol=1e-12)

    def test_angular_velocity_is_gdot_ginv(self):
        # finite-difference oracle: omega^ = gdot g^-1
        rng = np.random.default_rng(1)
        h = 1e-7
        for _ in range(30):
            ang = rng.uniform(-1.2, 1.2, 3)
            rates = rng.uniform(-2, 2, 3)
            g0 = er.euler_to_rotation(*ang)
            g1 = er.euler_to_rotation(*(ang + h * rates))
            m = (g1 - g0) / h @ g0.T
            omega_fd = np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0],
                                 m[1, 0] - m[0, 1]]) / 2.0
            omega = er.angular_velocity(ang, rates)
            assert np.allclose(omega, omega_fd, atol=1e-5)

    def test_rate_matrix_determinant(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            b, g = rng.uniform(-1.4, 1.4, 2)
            m = er.rate_to_omega_matrix(b, g)
            assert np.linalg.det(m) == pytest.approx(math.cos(b), abs=1e-12)

    def test_chart_singularity_raised(self):
        with pytest.raises(ChartSingularity):
            er.droll_constraint_residuals((0.0, 0.0, 0.1, 0.2, 0.3),
                                          (0.1, 0, 0, 0, 0))


class TestConstraintResiduals:
    def test_solved_rates_satisfy_constraints(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            beta = rng.uniform(-0.9, 0.9)
            gamma = rng.uniform(-3, 3)
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            vd = rng.standard_normal(3)
            vd -= (vd @ v) * v
            rates = er.solve_euler_rates(beta, gamma, v, vd, rho=3.0)
            omega = er.angular_velocity((0.0, beta, gamma), rates)
            assert np.abs(4.0 * vd - np.cross(omega, v)).max() <= 1e-9
            assert abs(omega @ v) <= 1e-9

    def test_residuals_along_integrated_edge(self):
        rec = []
        er.integrate_roll(EX, EY, steps=200, record=rec)
        worst = 0.0
        for t, state, rates in rec:
            res = er.droll_constraint_residuals(state, rates, rho=3.0)
            worst = max(worst, np.abs(res).max())
        assert worst <= 1e-8


class TestIntegration:
    def test_edge_matches_quaternion_monodromy(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            v1 = rng.standard_normal(3)
            v1 /= np.linalg.norm(v1)
            v2 = rng.standard_normal(3)
            v2 /= np.linalg.norm(v2)
            R, q = er.integrate_roll(v1, v2, steps=1500)
            qe = rl.edge_monodromy(v1, v2, 3.0)
            assert quat_distance(q, qe) <= 1e-8
            assert np.abs(R - quat_to_matrix(qe)).max() <= 1e-8

    def test_other_ratio(self):
        R, q = er.integrate_roll(EX, EY, rho=1.5, steps=1500)
        qe = rl.edge_monodromy(EX, EY, rho=1.5)
        assert quat_distance(q, qe) <= 1e-9

    def test_fourth_order_convergence(self):
        v1 = EX
        v2 = np.array([0.3, 0.8, 0.52])
        v2 /= np.linalg.norm(v2)
        qe = rl.edge_monodromy(v1, v2, 3.0)
        errs = []
        for steps in (100, 200, 400):
            _, q = er.integrate_roll(v1, v2, steps=steps)
            errs.append(quat_distance(q, qe))
        orders = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
        assert min(orders) >= 3.5

    def test_polygon_composition(self):
        poly = rl.SphericalPolygon([EX, EY, EZ])
        R, q = er.integrate_polygon(poly, steps_per_edge=800)
        assert quat_distance(q, rl.polygon_monodromy(poly).g) <= 1e-8

    def test_full_equator_lifts(self):
        R3, q3 = er.full_equator(rho=3.0, steps=3000)
        assert np.abs(R3 - np.eye(3)).max() <= 1e-9
        assert q3[0] == pytest.approx(1.0, abs=1e-9)
        R2, q2 = er.full_equator(rho=2.0, steps=3000)
        assert np.abs(R2 - np.eye(3)).max() <= 1e-9
        assert q2[0] == pytest.approx(-1.0, abs=1e-9)

    def test_degenerate_edge(self):
        with pytest.raises(DegenerateEdge):
            er.integrate_roll(EX, EX)

    def test_conjugation_frame_independence(self):
        # same edge fed with swapped roles must invert the monodromy
        v1, v2 = EX, EY
        _, q12 = er.integrate_roll(v1, v2, steps=800)
        _, q21 = er.integrate_roll(v2, v1, steps=800)
        prod = np.array([
            q12[0] * q21[0] - q12[1:] @ q21[1:],
            *(q12[0] * q21[1:] + q21[0] * q12[1:] + np.cross(q21[1:], q12[1:]))])
        assert min(np.linalg.norm(prod - np.array([1, 0, 0, 0])),
                   np.linalg.norm(prod + np.array([1, 0, 0, 0]))) <= 1e-8
