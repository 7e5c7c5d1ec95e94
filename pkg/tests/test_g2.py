import numpy as np
import pytest

from danceroll import bridge, dancing, g2
from danceroll.errors import NotSymmetricTraceless
from danceroll.octonion import (
    ImOctonion,
    Octonion,
    im_from_components,
    oct_mul,
    oct_polarize,
)


def rand_param(rng):
    T = rng.standard_normal((3, 3))
    T -= np.trace(T) / 3.0 * np.eye(3)
    return g2.G2Param(T, rng.standard_normal(3), rng.standard_normal(3))


def rand_sym_param(rng):
    T = rng.standard_normal((3, 3))
    T = 0.5 * (T + T.T)
    T -= np.trace(T) / 3.0 * np.eye(3)
    return g2.G2Param(T, np.zeros(3), np.zeros(3))


def oct_components(z):
    return np.array([z.x, *z.A, *z.b, z.y])


def derive(g, z):
    """Extend the derivation to full octonions (it kills the real part)."""
    im = ImOctonion(0.5 * (z.x - z.y), z.A, z.b)
    return g2.rho_apply(g, im).to_octonion()


class TestDerivation:
    def test_derivation_identity(self):
        rng = np.random.default_rng(0)
        worst = 0.0
        for _ in range(500):
            g = rand_param(rng)
            z = im_from_components(rng.standard_normal(7)).to_octonion()
            w = im_from_components(rng.standard_normal(7)).to_octonion()
            lhs = oct_components(derive(g, oct_mul(z, w)))
            rhs = oct_components(oct_mul(derive(g, z), w)) \
                + oct_components(oct_mul(z, derive(g, w)))
            worst = max(worst, np.abs(lhs - rhs).max())
        assert worst <= 1e-10

    def test_infinitesimal_isometry(self):
        # derivations are skew for the polarized norm form
        rng = np.random.default_rng(1)
        for _ in range(100):
            g = rand_param(rng)
            z = im_from_components(rng.standard_normal(7))
            w = im_from_components(rng.standard_normal(7))
            s = oct_polarize(g2.rho_apply(g, z), w) \
                + oct_polarize(z, g2.rho_apply(g, w))
            assert abs(s) <= 1e-10

    def test_rho_matrix_linear(self):
        rng = np.random.default_rng(2)
        ga, gb = rand_param(rng), rand_param(rng)
        assert np.allclose(g2.rho_matrix(ga + gb),
                           g2.rho_matrix(ga) + g2.rho_matrix(gb), atol=1e-12)

    def test_basis_independent(self):
        basis = g2.g2_basis()
        assert len(basis) == 14
        mats = np.array([g2.rho_matrix(b).ravel() for b in basis])
        assert np.linalg.matrix_rank(mats) == 14


class TestBracket:
    def test_bracket_matches_commutator(self):
        rng = np.random.default_rng(3)
        worst = 0.0
        for _ in range(200):
            ga, gb = rand_param(rng), rand_param(rng)
            lhs = g2.rho_matrix(g2.g2_bracket(ga, gb))
            rhs = g2.rho_matrix(ga) @ g2.rho_matrix(gb) \
                - g2.rho_matrix(gb) @ g2.rho_matrix(ga)
            worst = max(worst, np.abs(lhs - rhs).max())
        assert worst <= 1e-10

    def test_jacobi(self):
        rng = np.random.default_rng(4)
        worst = 0.0
        for _ in range(100):
            a, b, c = rand_param(rng), rand_param(rng), rand_param(rng)
            s = g2.g2_bracket(a, g2.g2_bracket(b, c)) \
                + g2.g2_bracket(b, g2.g2_bracket(c, a)) \
                + g2.g2_bracket(c, g2.g2_bracket(a, b))
            worst = max(worst, np.abs(s.T).max(), np.abs(s.Q).max(),
                        np.abs(s.p).max())
        assert worst <= 1e-9

    def test_antisymmetry(self):
        rng = np.random.default_rng(5)
        ga, gb = rand_param(rng), rand_param(rng)
        s = g2.g2_bracket(ga, gb) + g2.g2_bracket(gb, ga)
        assert max(np.abs(s.T).max(), np.abs(s.Q).max(), np.abs(s.p).max()) <= 1e-12


class TestInducedFields:
    def test_qdan_field_is_chart_quotient(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            g = rand_param(rng)
            p = dancing.random_qdan_point(rng)
            f, h = g2.qdan_field(g, p)
            # tangent to the quadric b A = 1
            assert abs(h @ p.A + p.b @ f) <= 1e-10
            # equals the x = 1 chart quotient of the linear action
            z = bridge.iota(p)
            X = g2.rho_apply(g, z)
            assert np.allclose(f, X.A - p.A * X.x, atol=1e-10)
            assert np.allclose(h, X.b - p.b * X.x, atol=1e-10)

    def test_qdan_field_finite_difference_flow(self):
        # flowing the matrix exponential of the 7x7 action and reading the
        # chart reproduces the field
        rng = np.random.default_rng(7)
        for _ in range(20):
            g = rand_param(rng)
            p = dancing.random_qdan_point(rng)
            f, h = g2.qdan_field(g, p)
            eps = 1e-6
            m = np.eye(7) + eps * g2.rho_matrix(g)
            z = im_from_components(m @ bridge.iota(p).components())
            p2 = bridge.iota_inv(z)
            assert np.allclose((p2.A - p.A) / eps, f, atol=1e-4)
            assert np.allclose((p2.b - p.b) / eps, h, atol=1e-4)

    def test_qroll_closed_form_matches_general(self):
        rng = np.random.default_rng(8)
        worst = 0.0
        for _ in range(200):
            gp = rand_sym_param(rng)
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            q = rng.standard_normal(4)
            q /= np.linalg.norm(q)
            f1, w1, h1 = g2.qroll_field(gp.T, v, q[0], q[1:])
            f2, w2, h2 = g2.qroll_field_general(gp, v, q[0], q[1:])
            worst = max(worst, np.abs(f1 - f2).max(), np.abs(w1 - w2).max(),
                        abs(h1 - h2))
        assert worst <= 1e-10

    def test_qroll_field_tangency(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            gp = rand_param(rng)
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            q = rng.standard_normal(4)
            q /= np.linalg.norm(q)
            f, w, h = g2.qroll_field_general(gp, v, q[0], q[1:])
            assert abs(f @ v) <= 1e-10
            assert abs(h * q[0] + w @ q[1:]) <= 1e-10

    def test_qroll_symmetric_guard(self):
        with pytest.raises(NotSymmetricTraceless):
            g2.qroll_field(np.array([[0.0, 1, 0], [0, 0, 0], [0, 0, 0]]),
                           np.array([1.0, 0, 0]), 1.0, np.zeros(3))


class TestPairSymmetry:
    def test_k_action_preserves_product_structure(self):
        rng = np.random.default_rng(10)
        q1 = rng.standard_normal(4)
        q1 /= np.linalg.norm(q1)
        q2 = rng.standard_normal(4)
        q2 /= np.linalg.norm(q2)
        v = rng.standard_normal(3)
        v /= np.linalg.norm(v)
        q = rng.standard_normal(4)
        q /= np.linalg.norm(q)
        v2, qn = g2.k_action(q1, q2, v, q)
        assert np.linalg.norm(v2) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(qn) == pytest.approx(1.0, abs=1e-12)

    def test_so4_embed_matches_transported_action(self):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(100):
            v1 = rng.standard_normal(3)
            v2 = rng.standard_normal(3)
            z = im_from_components(rng.standard_normal(7))
            lhs = g2.k_infinitesimal_on_im(v1, v2, z)
            rhs = g2.rho_apply(g2.so4_embed(v1, v2), z).scale(0.5)
            worst = max(worst, (lhs - rhs).norm())
        assert worst <= 1e-10

    def test_descent_criterion(self):
        rng = np.random.default_rng(12)
        pos = g2.so4_embed(rng.standard_normal(3), rng.standard_normal(3))
        assert g2.descends_to_base(pos)
        neg = rand_sym_param(rng)
        assert not g2.descends_to_base(neg)

    def test_descent_via_sigma_parity(self):
        # a field descends to S^2 x SO3 iff it is even under (v, q) -> (v, -q),
        # which in components reads (f, g, h)(v, -q) = (f, -g, -h)(v, q)
        rng = np.random.default_rng(13)
        for make, descends in ((lambda: g2.so4_embed(rng.standard_normal(3),
                                                     rng.standard_normal(3)), True),
                               (lambda: rand_sym_param(rng), False)):
            gp = make()
            worst = 0.0
            for _ in range(30):
                v = rng.standard_normal(3)
                v /= np.linalg.norm(v)
                q = rng.standard_normal(4)
                q /= np.linalg.norm(q)
                f1, w1, h1 = g2.qroll_field_general(gp, v, q[0], q[1:])
                f2, w2, h2 = g2.qroll_field_general(gp, v, -q[0], -q[1:])
                worst = max(worst, np.abs(f2 - f1).max(),
                            np.abs(w2 + w1).max(), abs(h2 + h1))
            if descends:
                assert worst <= 1e-10
            else:
                assert worst > 1e-3

    def test_tau_involution_conjugates_antipode(self):
        rng = np.random.default_rng(14)
        for _ in range(50):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            q = rng.standard_normal(4)
            q /= np.linalg.norm(q)
            lhs = g2.tau_involution(bridge.phi(v, q))
            rhs = bridge.phi(v, -q)
            assert (lhs - rhs).norm() <= 1e-12

    def test_tau_is_an_isometric_involution(self):
        rng = np.random.default_rng(15)
        z = im_from_components(rng.standard_normal(7))
        from danceroll.octonion import oct_form
        assert (g2.tau_involution(g2.tau_involution(z)) - z).norm() <= 1e-15
        assert oct_form(g2.tau_involution(z)) == pytest.approx(oct_form(z),
                                                               abs=1e-12)
