"""Metric values against closed forms, metric axioms, and the n-D estimators."""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st
from scipy import stats

from src.distributions.catalog import (
    catalog_1d,
    make_isotropic_laplace,
    make_isotropic_uniform,
    make_standard_gaussian,
)
from src.distributions.families import Gaussian1D
from src.metrics.entropy import differential_entropy, relative_entropy
from src.metrics.multi_dim import bl_distance_nd_bounds, tv_distance_nd, wasserstein_p_nd_upper
from src.metrics.one_dim import (
    bl_distance_1d,
    bl_dual_lp,
    kolmogorov_distance_1d,
    tv_distance_1d,
    w1_dual_1d,
    wasserstein_p_1d,
)
from src.metrics.panel import MetricPanel
from src.metrics.result import Z_95, MetricResult, monte_carlo_half_width

from .conftest import FAST

CATALOG = catalog_1d(4096)
members = st.sampled_from(CATALOG)


class TestClosedForms:
    def test_tv_of_shifted_gaussians(self):
        result = tv_distance_1d(Gaussian1D(0, 1), Gaussian1D(1, 1))
        assert result.value == pytest.approx(4 * stats.norm.cdf(0.5) - 2, abs=1e-6)
        assert result.value == pytest.approx(0.7658485, abs=1e-7)
        assert result.method == "quadrature"

    def test_kolmogorov_of_shifted_gaussians(self):
        result = kolmogorov_distance_1d(Gaussian1D(0, 1), Gaussian1D(1, 1))
        assert result.value == pytest.approx(0.3829249, abs=1e-6)

    @pytest.mark.parametrize("p", [1.0, 2.0, 4.0])
    def test_shift_moves_every_wasserstein_by_the_shift(self, p):
        assert wasserstein_p_1d(Gaussian1D(0, 1), Gaussian1D(1, 1), p).value == pytest.approx(
            1.0, abs=1e-6)

    def test_w2_of_scaled_gaussians(self):
        assert wasserstein_p_1d(Gaussian1D(0, 2), Gaussian1D(0, 1), 2.0).value == pytest.approx(
            1.0, abs=1e-6)

    def test_relative_entropy_of_gaussians(self):
        result = relative_entropy(Gaussian1D(0, 2), Gaussian1D(0, 1))
        assert result.value == pytest.approx(1.5 - math.log(2.0), abs=1e-6)
        assert result.value == pytest.approx(0.8068528, abs=1e-7)

    def test_relative_entropy_uniform_to_gaussian(self, uniform, gaussian):
        expected = -math.log(2 * math.sqrt(3)) + 0.5 * math.log(2 * math.pi) + 0.5
        assert relative_entropy(uniform, gaussian).value == pytest.approx(expected, abs=1e-7)

    def test_relative_entropy_off_support_is_infinite(self, gaussian, uniform):
        result = relative_entropy(gaussian, uniform)
        assert result.is_infinite
        assert result.to_dict()["value"] == "inf"

    @pytest.mark.parametrize("make, expected", [
        (make_standard_gaussian, 1.4189385),
        (make_isotropic_uniform, 1.2424533),
        (make_isotropic_laplace, 1.3465736),
    ])
    def test_entropies(self, make, expected):
        assert differential_entropy(make(1)).value == pytest.approx(expected, abs=1e-7)

    def test_product_entropy_is_additive(self):
        assert differential_entropy(make_isotropic_laplace(3), FAST).value == pytest.approx(
            3 * 1.3465736, abs=1e-6)


class TestBoundedLipschitz:
    def test_dual_lp_on_point_masses(self):
        nodes = np.array([0.0, 1.5, 3.0])
        assert bl_dual_lp(nodes, np.array([1, 0, 0]), np.array([0, 0, 1])) == pytest.approx(2.0)
        close = np.array([0.0, 1.0])
        assert bl_dual_lp(close, np.array([1, 0]), np.array([0, 1])) == pytest.approx(1.0)

    def test_dual_lp_of_equal_weights_is_zero(self):
        nodes = np.linspace(-1, 1, 5)
        weights = np.full(5, 0.2)
        assert bl_dual_lp(nodes, weights, weights) == pytest.approx(0.0, abs=1e-12)

    def test_grid_size_floor(self, uniform, gaussian):
        with pytest.raises(ValueError, match="grid_size"):
            bl_distance_1d(uniform, gaussian, grid_size=8)

    def test_small_shift_matches_w1(self):
        # for a shift h ≤ 1 the optimal test function is g(x) = x near the mass
        result = bl_distance_1d(Gaussian1D(0, 0.1), Gaussian1D(0.05, 0.1), settings=FAST)
        assert result.value == pytest.approx(0.05, abs=2e-3)

    def test_error_is_the_grid_refinement_delta(self, uniform, laplace):
        result = bl_distance_1d(uniform, laplace, settings=FAST)
        coarse = bl_distance_1d(uniform, laplace, grid_size=FAST.grid_size // 2, settings=FAST)
        assert result.abs_error >= abs(result.value - coarse.value) - 1e-12


class TestMetricAxioms:
    @hypothesis_settings(max_examples=12, deadline=None)
    @given(members, members)
    def test_symmetry_and_sandwich(self, a, b):
        (_, mu), (_, nu) = a, b
        tv = tv_distance_1d(mu, nu, FAST)
        assert tv.value == pytest.approx(tv_distance_1d(nu, mu, FAST).value, abs=1e-8)
        assert 0.0 <= tv.value <= 2.0
        w1 = wasserstein_p_1d(mu, nu, 1.0, FAST)
        bl = bl_distance_1d(mu, nu, settings=FAST)
        slack = bl.abs_error + 1e-6
        assert bl.value <= tv.value + slack
        assert bl.value <= w1.value + slack

    @hypothesis_settings(max_examples=10, deadline=None)
    @given(members, members, members)
    def test_triangle_inequality(self, a, b, c):
        (_, x), (_, y), (_, z) = a, b, c
        xz = tv_distance_1d(x, z, FAST)
        xy = tv_distance_1d(x, y, FAST)
        yz = tv_distance_1d(y, z, FAST)
        assert xz.value <= xy.value + yz.value + xz.abs_error + xy.abs_error + yz.abs_error + 1e-9

    @hypothesis_settings(max_examples=10, deadline=None)
    @given(members, members)
    def test_w1_primal_equals_dual(self, a, b):
        (_, mu), (_, nu) = a, b
        assert wasserstein_p_1d(mu, nu, 1.0, FAST).value == pytest.approx(
            w1_dual_1d(mu, nu, FAST).value, abs=1e-6)

    @hypothesis_settings(max_examples=10, deadline=None)
    @given(members)
    def test_identity(self, a):
        _, mu = a
        assert tv_distance_1d(mu, mu, FAST).value == pytest.approx(0.0, abs=1e-9)
        assert relative_entropy(mu, mu, FAST).value == pytest.approx(0.0, abs=1e-8)


class TestMultiDimensional:
    def test_tv_needs_two_dimensions(self, uniform, gaussian):
        with pytest.raises(ValueError, match="n >= 2"):
            tv_distance_nd(uniform, gaussian, settings=FAST)

    def test_tv_of_identical_products_is_small(self):
        d = make_isotropic_laplace(3)
        result = tv_distance_nd(d, d, settings=FAST)
        assert result.value == pytest.approx(0.0, abs=1e-12)

    def test_tv_of_products_is_seeded(self):
        mu, nu = make_isotropic_uniform(2), make_standard_gaussian(2)
        first = tv_distance_nd(mu, nu, seed=3, settings=FAST)
        assert first == tv_distance_nd(mu, nu, seed=3, settings=FAST)
        assert first.method == "monte-carlo" and first.abs_error > 0

    def test_w2_is_additive_over_coordinates(self, uniform, gaussian):
        one = wasserstein_p_1d(uniform, gaussian, 2.0).value
        result = wasserstein_p_nd_upper(make_isotropic_uniform(3), make_standard_gaussian(3), 2.0,
                                        settings=FAST)
        assert result.kind == "exact"
        assert result.value == pytest.approx(math.sqrt(3) * one, rel=1e-9)

    def test_w1_is_an_upper_bound(self):
        result = wasserstein_p_nd_upper(make_isotropic_uniform(2), make_standard_gaussian(2), 1.0,
                                        settings=FAST)
        assert result.kind == "upper"

    def test_bl_sandwich_is_ordered(self):
        lower, upper = bl_distance_nd_bounds(make_isotropic_laplace(2), make_standard_gaussian(2),
                                             settings=FAST)
        assert lower.kind == "lower" and upper.kind == "upper"
        assert 0.0 <= lower.value <= upper.value


class TestPanelAndResult:
    def test_panel_caches_metrics(self, uniform, gaussian):
        panel = MetricPanel(uniform, gaussian, FAST)
        assert panel.tv() is panel.tv()
        assert panel.get("w2") is panel.wasserstein(2.0)

    def test_panel_rejects_unknown_metric(self, uniform, gaussian):
        with pytest.raises(ValueError, match="Unknown metric"):
            MetricPanel(uniform, gaussian, FAST).get("hellinger")

    def test_panel_rejects_dimension_mismatch(self, uniform):
        with pytest.raises(ValueError, match="dimension mismatch"):
            MetricPanel(uniform, make_standard_gaussian(2), FAST)

    def test_kolmogorov_is_one_dimensional(self):
        panel = MetricPanel(make_isotropic_uniform(2), make_standard_gaussian(2), FAST)
        with pytest.raises(ValueError):
            panel.kolmogorov()

    def test_result_validation(self):
        with pytest.raises(ValueError):
            MetricResult(-1.0, 0.0, "quadrature")
        with pytest.raises(ValueError):
            MetricResult(1.0, 0.0, "guesswork")

    def test_format_line(self):
        line = MetricResult(0.5, 1e-9, "quadrature", "3 pieces").format_line()
        assert line == "0.5 1e-09 quadrature 3 pieces"

    def test_half_width_uses_the_normal_quantile(self):
        assert Z_95 == pytest.approx(1.959963985, abs=1e-9)
        assert monte_carlo_half_width(2.0, 100) == pytest.approx(Z_95 * 0.2, rel=1e-15)
