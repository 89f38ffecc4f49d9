import math

import numpy as np
import pytest
from scipy.integrate import quad

from circleloop import FourierSeries, check_weight, simpson_quadrature, solve_a0
from circleloop.errors import InvalidGridError

TWO_PI = 2.0 * np.pi


def brute_eval(s: FourierSeries, t: float) -> float:
    """Independent evaluation oracle: plain math summation, no numpy."""
    total = s.a0
    for k in range(1, s.harmonics + 1):
        total += s.cos[k - 1] * math.cos(k * t) + s.sin[k - 1] * math.sin(k * t)
    return total


class TestEvaluation:
    def test_constant(self):
        assert FourierSeries(1.0)(0.7) == 1.0

    def test_pure_cosine_at_zero(self):
        assert FourierSeries(0.0, (1.0,), (0.0,))(0.0) == 1.0

    def test_example_at_pi(self):
        s = FourierSeries(0.9, (0.2,), (0.0,))
        assert s(np.pi) == pytest.approx(0.7, abs=1e-15)
        assert s(np.pi) == pytest.approx(brute_eval(s, np.pi), abs=1e-15)

    def test_matches_brute_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            k = int(rng.integers(0, 6))
            s = FourierSeries(rng.normal(), tuple(rng.normal(size=k)), tuple(rng.normal(size=k)))
            for t in rng.uniform(-10, 10, 5):
                assert s(t) == pytest.approx(brute_eval(s, t), abs=1e-12)

    def test_periodicity(self):
        rng = np.random.default_rng(11)
        s = FourierSeries(rng.normal(), tuple(rng.normal(size=4)), tuple(rng.normal(size=4)))
        ts = rng.uniform(0, TWO_PI, 50)
        assert np.max(np.abs(s(ts) - s(ts + TWO_PI))) < 1e-12

    def test_array_evaluation(self):
        s = FourierSeries(0.5, (0.1,), (0.2,))
        ts = np.linspace(0, TWO_PI, 7)
        assert np.allclose(s(ts), [s(float(t)) for t in ts])

    def test_mismatched_coefficients_rejected(self):
        with pytest.raises(ValueError):
            FourierSeries(1.0, (0.1,), ())

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            FourierSeries(float("nan"))


class TestDerivative:
    def test_constant_is_flat(self):
        assert FourierSeries(1.0).derivative_at(0.3) == 0.0

    def test_sine_slope_at_zero(self):
        assert FourierSeries(0.0, (0.0,), (1.0,)).derivative_at(0.0) == 1.0

    def test_example_at_half_pi(self):
        s = FourierSeries(0.9, (0.2,), (0.0,))
        val = s.derivative_at(np.pi / 2)
        assert val == pytest.approx(-0.2, abs=1e-15)
        h = 1e-6
        fd = (s(np.pi / 2 + h) - s(np.pi / 2 - h)) / (2 * h)
        assert val == pytest.approx(fd, abs=1e-9)

    def test_finite_difference_order(self):
        rng = np.random.default_rng(3)
        s = FourierSeries(rng.normal(), tuple(rng.normal(size=4)), tuple(rng.normal(size=4)))
        # central difference error is bounded by M3 h^2 / 6
        m3 = sum(k**3 * (abs(a) + abs(b)) for k, (a, b) in enumerate(zip(s.cos, s.sin), 1))
        for h in (1e-4, 1e-5):
            for t in rng.uniform(0, TWO_PI, 10):
                fd = (s(t + h) - s(t - h)) / (2 * h)
                assert abs(fd - s.derivative_at(t)) <= m3 * h * h / 6 + 1e-10

    def test_derivative_series_matches_pointwise(self):
        rng = np.random.default_rng(5)
        s = FourierSeries(rng.normal(), tuple(rng.normal(size=3)), tuple(rng.normal(size=3)))
        ts = rng.uniform(0, TWO_PI, 20)
        assert np.allclose(s.derivative()(ts), s.derivative_at(ts), atol=1e-14)


class TestExpWeightedIntegral:
    def test_constant_full_period(self):
        got = FourierSeries(1.0).exp_weighted_integral(TWO_PI)
        assert got == pytest.approx(1.0 - math.exp(-TWO_PI), abs=1e-15)

    def test_zero_length(self):
        s = FourierSeries(0.3, (0.2,), (-0.1,))
        assert s.exp_weighted_integral(0.0) == 0.0

    def test_pure_sine_full_period(self):
        # int_0^{2pi} sin(u) e^-u du = (1 - e^{-2pi})/2
        got = FourierSeries(0.0, (0.0,), (1.0,)).exp_weighted_integral(TWO_PI)
        expected = 0.5 * (1.0 - math.exp(-TWO_PI))
        assert got == pytest.approx(expected, abs=1e-14)
        adaptive, _ = quad(lambda u: math.sin(u) * math.exp(-u), 0.0, TWO_PI)
        assert got == pytest.approx(adaptive, abs=1e-12)

    def test_against_quadrature_oracle_admissible_scale(self):
        from conftest import random_admissible_weight

        rng = np.random.default_rng(13)
        for _ in range(10):
            s = random_admissible_weight(rng)
            for t in rng.uniform(0.1, TWO_PI, 4):
                oracle = simpson_quadrature(lambda u: s(u) * np.exp(-u), 0.0, float(t), 512)
                assert s.exp_weighted_integral(float(t)) == pytest.approx(oracle, abs=1e-8)

    def test_against_quadrature_oracle_wild_series(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            k = int(rng.integers(0, 5))
            s = FourierSeries(rng.normal(), tuple(rng.normal(size=k)), tuple(rng.normal(size=k)))
            for t in rng.uniform(0.1, TWO_PI, 4):
                oracle = simpson_quadrature(lambda u: s(u) * np.exp(-u), 0.0, float(t), 4096)
                assert s.exp_weighted_integral(float(t)) == pytest.approx(oracle, abs=1e-8)


class TestSeriesAlgebra:
    def test_product_matches_pointwise(self):
        rng = np.random.default_rng(17)
        p = FourierSeries(rng.normal(), tuple(rng.normal(size=3)), tuple(rng.normal(size=3)))
        q = FourierSeries(rng.normal(), tuple(rng.normal(size=2)), tuple(rng.normal(size=2)))
        prod = p * q
        assert prod.harmonics == 5
        ts = rng.uniform(0, TWO_PI, 40)
        assert np.allclose(prod(ts), p(ts) * q(ts), atol=1e-12)

    def test_integral_from_zero_matches_quadrature(self):
        rng = np.random.default_rng(19)
        s = FourierSeries(rng.normal(), tuple(rng.normal(size=3)), tuple(rng.normal(size=3)))
        for t in (0.5, 2.0, TWO_PI):
            oracle = simpson_quadrature(s, 0.0, t, 512)
            assert s.integral_from_zero(t) == pytest.approx(oracle, abs=1e-9)

    def test_add_sub_reflect_negate(self):
        p = FourierSeries(1.0, (0.5,), (0.25,))
        q = FourierSeries(0.5, (0.1, 0.2), (0.0, -0.3))
        ts = np.linspace(0, TWO_PI, 11)
        assert np.allclose((p + q)(ts), p(ts) + q(ts))
        assert np.allclose((p - q)(ts), p(ts) - q(ts))
        assert np.allclose(p.reflected()(ts), p(-ts))
        assert np.allclose((-p)(ts), -(p(ts)))


class TestWeightAdmissibility:
    def test_trivial_weight(self):
        rep = check_weight(FourierSeries(1.0), 64)
        assert rep.verdict
        assert rep.identity_residual == 0.0
        assert rep.positivity_margin == pytest.approx(1.0)
        assert rep.energy_slack == pytest.approx(2.0)

    def test_example_weight(self):
        rep = check_weight(FourierSeries(0.9, (0.2,), (0.0,)), 4096)
        assert rep.verdict
        assert rep.identity_residual < 1e-15  # 0.9 + 0.2/2 = 1 exactly
        # amplitude of 0.1 sin t - 0.1 cos t is 0.1*sqrt(2)
        assert rep.positivity_margin == pytest.approx(0.9 - 0.1 * math.sqrt(2), abs=1e-6)
        assert rep.energy_slack == pytest.approx(1.8)  # k=1 term vanishes

    def test_example_margin_against_dense_minimization(self):
        rep = check_weight(FourierSeries(0.9, (0.2,), (0.0,)), 4096)
        ts = np.linspace(0, TWO_PI, 2_000_001)
        dense = np.min(0.9 + 0.1 * np.cos(ts) - 0.1 * np.sin(ts))
        assert rep.positivity_margin == pytest.approx(dense, abs=1e-7)

    def test_identity_violation(self):
        rep = check_weight(FourierSeries(0.5), 64)
        assert not rep.verdict
        assert rep.identity_residual == pytest.approx(0.5)

    def test_energy_violation(self):
        # large k=2 coefficients break the energy bound
        cos, sin = (0.0, 2.0), (0.0, 0.0)
        rep = check_weight(FourierSeries(solve_a0(cos, sin), cos, sin), 4096)
        assert rep.energy_slack < 0
        assert not rep.verdict

    def test_grid_too_coarse(self):
        s = FourierSeries(1.0, (0.0,) * 4, (0.0,) * 4)
        with pytest.raises(InvalidGridError):
            check_weight(s, 31)

    def test_determinism(self):
        s = FourierSeries(0.9, (0.2,), (0.0,))
        assert check_weight(s, 512) == check_weight(s, 512)

    def test_solve_a0_makes_identity_exact(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            k = int(rng.integers(1, 6))
            cos = tuple(rng.normal(size=k))
            sin = tuple(rng.normal(size=k))
            s = FourierSeries(solve_a0(cos, sin), cos, sin)
            rep = check_weight(s, 4 * k + 16)
            assert rep.identity_residual < 1e-14


class TestSimpsonOracle:
    def test_constant(self):
        assert simpson_quadrature(lambda x: np.ones_like(x), 0, TWO_PI, 128) == pytest.approx(
            TWO_PI, abs=1e-12
        )

    def test_sine_half_period(self):
        # composite-rule error bound is (b-a) h^4 max|f''''| / 180
        assert simpson_quadrature(np.sin, 0, np.pi, 128) == pytest.approx(2.0, abs=1e-8)
        assert simpson_quadrature(np.sin, 0, np.pi, 512) == pytest.approx(2.0, abs=1e-10)

    def test_exponential(self):
        exact = 1.0 - math.exp(-TWO_PI)
        assert simpson_quadrature(lambda u: np.exp(-u), 0, TWO_PI, 256) == pytest.approx(
            exact, abs=2e-8
        )
        assert simpson_quadrature(lambda u: np.exp(-u), 0, TWO_PI, 1024) == pytest.approx(
            exact, abs=1e-10
        )

    def test_fourth_order_convergence(self):
        errs = [
            abs(simpson_quadrature(np.sin, 0, np.pi, n) - 2.0) for n in (64, 128, 256)
        ]
        assert 12 < errs[0] / errs[1] < 20
        assert 12 < errs[1] / errs[2] < 20

    def test_agrees_with_adaptive_quadrature(self):
        fn = lambda u: np.exp(-u) * np.cos(3 * u)
        adaptive, _ = quad(fn, 0.0, TWO_PI)
        assert simpson_quadrature(fn, 0.0, TWO_PI, 4096) == pytest.approx(adaptive, abs=1e-10)

    @pytest.mark.parametrize("n", [0, 1, 3, -2])
    def test_invalid_node_counts(self, n):
        with pytest.raises(InvalidGridError):
            simpson_quadrature(np.sin, 0, 1, n)
