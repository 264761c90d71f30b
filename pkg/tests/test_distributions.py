"""Densities, grids, the isotropic families and the catalog."""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from src.distributions.catalog import (
    catalog_1d,
    catalog_nd,
    catalog_pairs_1d,
    convolve_interpolate,
    density_from_spec,
    make_isotropic_laplace,
    make_isotropic_uniform,
    make_mixed_uniform_laplace,
    make_standard_gaussian,
    sample,
    whiten,
)
from src.distributions.families import Gaussian1D, Laplace1D, Uniform1D
from src.distributions.grid import GridFunction, convolve_on_grid, uniform_grid


class TestGridFunction:
    def test_trapezoid_integral_of_a_hat(self):
        grid = GridFunction(np.array([-1.0, 0.0, 1.0]), np.array([0.0, 1.0, 0.0]))
        assert grid.integral() == pytest.approx(1.0)
        assert grid(0.5) == pytest.approx(0.5)
        assert grid(3.0) == 0.0

    def test_normalized_integrates_to_one(self):
        grid = GridFunction.tabulate(lambda x: 2.0 * np.exp(-x * x), -8, 8, 2001)
        assert grid.normalized().integral() == pytest.approx(1.0, abs=1e-12)

    def test_rejects_unsorted_nodes(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            GridFunction(np.array([0.0, 2.0, 1.0]), np.zeros(3))

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError):
            uniform_grid(1.0, 1.0, 10)

    def test_convolution_keeps_mass(self):
        nodes = uniform_grid(-10, 10, 4001)
        h = nodes[1] - nodes[0]
        f = GridFunction(nodes, Gaussian1D().pdf(nodes))
        kernel = Gaussian1D(0.0, 0.5).pdf(np.arange(-400, 401) * h) * h
        smoothed = convolve_on_grid(f, kernel)
        assert smoothed.integral() == pytest.approx(1.0, abs=1e-6)


class TestFamilies:
    @pytest.mark.parametrize("density, peak", [
        (Gaussian1D(), 0.3989423),
        (Uniform1D(), 0.2886751),
        (Laplace1D(), 0.7071068),
    ])
    def test_isotropic_peaks(self, density, peak):
        assert density.max_density() == pytest.approx(peak, abs=1e-7)
        assert density.isotropic

    def test_laplace_cdf(self, laplace):
        assert float(laplace.cdf(1.0)) == pytest.approx(0.8783470, abs=1e-7)

    def test_uniform_quantile(self, uniform):
        assert float(uniform.quantile(0.25)) == pytest.approx(-0.8660254, abs=1e-7)

    def test_quantile_rejects_closed_endpoints(self, gaussian):
        with pytest.raises(ValueError):
            gaussian.quantile(1.0)

    def test_uniform_density_is_zero_outside(self, uniform):
        assert float(uniform.pdf(2.0)) == 0.0
        assert float(uniform.log_pdf(2.0)) == -math.inf

    @pytest.mark.parametrize("n", [1, 3])
    def test_isotropic_members(self, n):
        for make in (make_standard_gaussian, make_isotropic_uniform, make_isotropic_laplace):
            d = make(n)
            assert d.dimension == n
            np.testing.assert_allclose(d.mean_vector(), np.zeros(n), atol=1e-12)
            np.testing.assert_allclose(d.covariance_matrix(), np.eye(n), atol=1e-12)

    def test_dimension_must_be_positive(self):
        with pytest.raises(ValueError):
            make_standard_gaussian(0)

    def test_mixed_law_is_isotropic(self):
        mixed = make_mixed_uniform_laplace()
        assert mixed.mean() == pytest.approx(0.0, abs=1e-9)
        assert mixed.variance() == pytest.approx(1.0, abs=1e-6)


class TestInterpolation:
    def test_endpoints(self, uniform):
        assert convolve_interpolate(uniform, 1.0) is uniform
        assert convolve_interpolate(uniform, 0.0).structure == "gaussian"

    def test_rejects_t_outside_unit_interval(self, uniform):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            convolve_interpolate(uniform, 1.5)

    @pytest.mark.parametrize("t", [0.8, 0.4, 0.2])
    def test_interpolation_stays_isotropic(self, laplace, t):
        law = convolve_interpolate(laplace, t)
        assert law.mean() == pytest.approx(0.0, abs=1e-9)
        assert law.variance() == pytest.approx(1.0, abs=1e-9)
        assert float(law.cdf(0.0)) == pytest.approx(0.5, abs=1e-9)

    def test_product_base_is_interpolated_per_coordinate(self):
        law = convolve_interpolate(make_isotropic_uniform(3), 0.4, grid_nodes=4096)
        assert law.factors() is not None and len(law.factors()) == 3


class TestSpecsAndCatalog:
    def test_isotropic_spec(self):
        d = density_from_spec({"family": "laplace", "n": 2})
        assert d.dimension == 2 and d.isotropic

    def test_raw_params_are_whitened(self):
        d = density_from_spec({"family": "uniform", "n": 1,
                               "params": {"low": 0.0, "high": 6.928203230275509}})
        assert d.mean() == pytest.approx(0.0, abs=1e-12)
        assert d.variance() == pytest.approx(1.0, abs=1e-12)

    def test_unknown_family(self):
        with pytest.raises(ValueError, match="Unknown family"):
            density_from_spec({"family": "cauchy", "n": 1})

    def test_catalog_sizes(self):
        members = catalog_1d(4096)
        assert len(members) == 9
        assert len(catalog_pairs_1d(4096)) == 36
        assert [name for name, _ in catalog_nd(4, grid_nodes=4096)][:3] == [
            "gaussian4", "uniform4", "laplace4"]

    def test_sampling_is_seeded(self):
        d = make_isotropic_laplace(2)
        np.testing.assert_array_equal(sample(d, 50, 11), sample(d, 50, 11))
        assert sample(d, 50, 11).shape == (50, 2)

    def test_samples_are_isotropic(self):
        draws = sample(make_isotropic_uniform(2), 100_000, 3)
        np.testing.assert_allclose(draws.mean(axis=0), 0.0, atol=0.02)
        np.testing.assert_allclose(np.cov(draws.T), np.eye(2), atol=0.03)


CATALOG = catalog_1d(4096)
CATALOG_IDS = [name for name, _ in CATALOG]


def central_range(density, tail=1e-3):
    return float(density.quantile(tail)), float(density.quantile(1.0 - tail))


class TestInvariants:
    @pytest.mark.parametrize("name, density", CATALOG, ids=CATALOG_IDS)
    def test_density_integrates_to_one(self, name, density):
        lo, hi = density.effective_support(1e-13)
        points = [p for p in density.breakpoints() if lo < p < hi]
        total, _ = integrate.quad(lambda x: float(density.pdf(x)), lo, hi,
                                  points=points or None, limit=400, epsabs=1e-13)
        assert total == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("name, density", CATALOG, ids=CATALOG_IDS)
    def test_log_density_is_midpoint_concave(self, name, density):
        rng = np.random.default_rng(11)
        lo, hi = central_range(density)
        x, y = rng.uniform(lo, hi, 1000), rng.uniform(lo, hi, 1000)
        lam = rng.uniform(0.0, 1.0, 1000)
        mixed = density.log_pdf(lam * x + (1.0 - lam) * y)
        chord = lam * density.log_pdf(x) + (1.0 - lam) * density.log_pdf(y)
        assert np.all(mixed >= chord - 1e-10)

    @pytest.mark.parametrize("name, density", CATALOG, ids=CATALOG_IDS)
    def test_quantile_inverts_cdf(self, name, density):
        x = np.linspace(*central_range(density), 201)
        np.testing.assert_allclose(density.quantile(density.cdf(x)), x, rtol=0, atol=1e-8)

    def test_whitening_a_shifted_gaussian(self):
        law = whiten(Gaussian1D(3.0, 2.0), 3.0, 4.0)
        assert isinstance(law, Gaussian1D)
        assert law.loc == pytest.approx(0.0, abs=1e-15)
        assert law.sd == pytest.approx(1.0, rel=1e-15)

    def test_whitening_a_uniform_interval(self):
        root3 = math.sqrt(3.0)
        law = whiten(Uniform1D(2.0 * root3, 2.0 * root3), 2.0 * root3, 4.0)
        assert isinstance(law, Uniform1D)
        assert (law.lo, law.hi) == pytest.approx((-root3, root3), abs=1e-12)

    @pytest.mark.parametrize("covariance, message", [
        ([[1.0, 2.0], [2.0, 1.0]], "positive definite"),
        ([[1.0, 0.5], [0.0, 1.0]], "symmetric"),
        ([[1.0]], "2x2"),
    ])
    def test_whitening_rejects_bad_covariance(self, covariance, message):
        with pytest.raises(ValueError, match=message):
            whiten(make_standard_gaussian(2), [0.0, 0.0], covariance)

    @pytest.mark.parametrize("make", [make_isotropic_uniform, make_isotropic_laplace])
    def test_interpolation_approaches_the_gaussian_density(self, make):
        x = np.linspace(-6.0, 6.0, 2001)
        phi = stats.norm.pdf(x)
        gaps = [float(np.max(np.abs(convolve_interpolate(make(1), t, 4096).pdf(x) - phi)))
                for t in (0.8, 0.4, 0.2, 0.1)]
        assert gaps == sorted(gaps, reverse=True)
        assert gaps[-1] < gaps[0] / 4.0
