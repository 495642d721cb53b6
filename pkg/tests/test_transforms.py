import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latentweight.dist import outcome_bits, product_table
from latentweight.errors import ValidationError
from latentweight.transforms import (
    f_omega_q,
    f_omega_y,
    gradient_f,
    hessian_f,
    log_f_y,
    q_to_y,
    sigmoid,
    softplus,
    y_to_q,
)

interior = st.floats(min_value=1e-6, max_value=1 - 1e-6)


def random_points(n=100, seed=7):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        d = int(rng.integers(1, 7))
        yield rng.uniform(-4.0, 4.0, size=d)


class TestStableFunctions:
    def test_softplus_values(self):
        np.testing.assert_allclose(softplus([0.0, 1.0, -1.0]), np.log1p(np.exp([0.0, 1.0, -1.0])))

    def test_softplus_extremes(self):
        np.testing.assert_allclose(softplus([800.0, -800.0]), [800.0, 0.0], atol=1e-300)

    def test_sigmoid_symmetry(self):
        t = np.linspace(-50, 50, 101)
        np.testing.assert_allclose(sigmoid(t) + sigmoid(-t), 1.0, rtol=1e-15)


class TestChangeOfVariables:
    def test_reciprocal_example(self):
        # omega = (1, 0), q = (0.25, 0.5): Q(omega) = 0.25 * 0.5
        assert f_omega_q((1, 0), [0.25, 0.5]) == pytest.approx(8.0)

    def test_reciprocal_matches_table(self):
        q = np.array([0.1, 0.7, 0.4])
        table = product_table(q).probs
        for k in range(8):
            assert f_omega_q(k, q) == pytest.approx(1.0 / table[k], rel=1e-12)

    def test_objective_in_y(self):
        q = np.array([0.1, 0.7, 0.4])
        for k in range(8):
            lf, f = f_omega_y(q_to_y(k, q))
            assert f == pytest.approx(f_omega_q(k, q), rel=1e-12)
            assert lf == pytest.approx(np.log(f_omega_q(k, q)), rel=1e-12)

    @settings(max_examples=200)
    @given(st.lists(interior, min_size=1, max_size=6), st.integers(min_value=0))
    def test_roundtrip(self, q, seed):
        q = np.array(q)
        omega = seed % (1 << q.size)
        np.testing.assert_allclose(y_to_q(omega, q_to_y(omega, q)), q, rtol=1e-9, atol=1e-15)

    def test_boundary_rejected(self):
        with pytest.raises(ValidationError) as exc:
            q_to_y(0, [0.0, 0.5])
        assert exc.value.code == "BOUNDARY"

    def test_bad_outcome(self):
        with pytest.raises(ValidationError):
            y_to_q((0, 2), [0.0, 0.0])

    def test_large_y_log_form_finite(self):
        lf, f = f_omega_y([900.0, 900.0])
        assert lf == pytest.approx(1800.0)
        assert np.isinf(f)


class TestConstraintEquivalence:
    def test_linear_matches_ratio(self):
        # P(nu) >= P(omega) Q(nu)/Q(omega) is linear in y: sum over differing bits of y_i <= log ratio
        rng = np.random.default_rng(3)
        d = 3
        for _ in range(50):
            q = rng.uniform(0.05, 0.95, size=d)
            omega = int(rng.integers(8))
            y = q_to_y(omega, q)
            logq = np.log(product_table(q).probs)
            for nu in range(8):
                mask = np.array(outcome_bits(nu ^ omega, d))
                assert mask @ y == pytest.approx(logq[nu] - logq[omega], abs=1e-10)


class TestDerivatives:
    def test_gradient_central_differences(self):
        h = 1e-5
        for y in random_points():
            g = gradient_f(y)
            fd = np.array(
                [(f_omega_y(y + h * e)[1] - f_omega_y(y - h * e)[1]) / (2 * h) for e in np.eye(y.size)]
            )
            np.testing.assert_allclose(g, fd, rtol=1e-5)

    def test_gradient_is_f_times_gamma(self):
        for y in random_points(20):
            np.testing.assert_allclose(gradient_f(y), f_omega_y(y)[1] * sigmoid(y), rtol=1e-14)

    def test_hessian_positive_definite(self):
        for y in random_points():
            H = hessian_f(y)
            np.testing.assert_allclose(H, H.T)
            np.linalg.cholesky(H)

    def test_hessian_matches_gradient_differences(self):
        h = 1e-6
        y = np.array([0.3, -1.2, 2.0])
        fd = np.column_stack([(gradient_f(y + h * e) - gradient_f(y - h * e)) / (2 * h) for e in np.eye(3)])
        np.testing.assert_allclose(hessian_f(y), fd, rtol=1e-6)

    def test_monotone_in_each_coordinate(self):
        y = np.zeros(4)
        for i in range(4):
            vals = [log_f_y(y + t * np.eye(4)[i]) for t in np.linspace(-5, 5, 21)]
            assert np.all(np.diff(vals) > 0)
