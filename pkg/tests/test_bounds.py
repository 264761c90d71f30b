"""Bound checks, constant fitting and the pair-bound dispatch."""

import math

import pytest

from src.bounds.comparisons import (
    bhvv_shape,
    check_bhvv,
    check_classical_bl_tv,
    check_classical_bl_w1,
    check_h_tv,
    check_kolmogorov_tv,
    check_pinsker,
    check_tv_bl,
    check_w1_bl,
    check_wp_monotone,
    check_wq_wp,
    h_tv_shape,
    tv_bl_shape,
    w1_bl_shape,
    wq_wp_shape,
)
from src.bounds.fitting import (
    CLASSICAL_BOUNDS,
    apply_constant,
    evaluate_pair_bounds,
    fit_constant,
    fit_suite,
    is_tight,
)
from src.bounds.model import (
    BOUND_REGISTRY,
    PAIR_BOUND_IDS,
    BoundCheck,
    get_bound_spec,
    make_check,
    propagate_error,
)
from src.distributions.catalog import convolve_interpolate, make_isotropic_laplace, make_standard_gaussian
from src.distributions.families import Gaussian1D
from src.metrics.panel import MetricPanel

from .conftest import FAST


class TestBoundCheck:
    def test_multiplier_scoring(self):
        check = BoundCheck("tv-bl", lhs=0.3, unit_rhs=0.2, constant=2.0)
        assert check.rhs == pytest.approx(0.4)
        assert check.slack == pytest.approx(0.1)
        assert check.holds and not check.vacuous
        assert check.ratio == pytest.approx(1.5)

    def test_rate_scoring(self):
        check = BoundCheck("paouris-tail", lhs=math.exp(-6.0), unit_rhs=3.0, constant=1.0)
        assert check.ratio == pytest.approx(2.0)
        assert check.holds
        assert not check.with_constant(2.5).holds

    def test_vacuous_instance(self):
        check = BoundCheck("w1-bl", lhs=0.0, unit_rhs=0.0)
        assert check.vacuous and check.holds

    def test_tolerance_absorbs_propagated_error(self):
        check = BoundCheck("classical-bl-tv", lhs=0.5, unit_rhs=0.5 - 1e-7, lhs_error=1e-6)
        assert check.numerical_tolerance == pytest.approx(1e-6)
        assert check.holds

    def test_key_includes_variant(self):
        assert BoundCheck("wq-wp", 1.0, 1.0, variant="p=1,q=2").key == "wq-wp[p=1,q=2]"

    def test_dict_round_trip_keeps_infinities_as_strings(self):
        check = BoundCheck("pinsker", lhs=0.4, unit_rhs=math.inf)
        data = check.to_dict()
        assert data["unit_rhs"] == "inf"
        assert BoundCheck.from_dict(data).unit_rhs == math.inf

    def test_make_check_scores_fitted_bound_at_its_ratio(self):
        check = make_check("tv-bl", 0.6, 0.3, FAST)
        assert check.constant == pytest.approx(2.0)
        assert check.fitted_constant == pytest.approx(2.0)

    def test_make_check_keeps_classical_constant(self):
        assert make_check("pinsker", 0.6, 0.3, FAST).constant == 1.0

    def test_registry(self):
        assert get_bound_spec("tv-bl").fit == "multiplier"
        assert get_bound_spec("paouris-tail").fit == "rate"
        assert "min-lemma" not in PAIR_BOUND_IDS
        assert "w1-truncation" in PAIR_BOUND_IDS
        assert len(BOUND_REGISTRY) == 20
        with pytest.raises(ValueError, match="Unknown bound id"):
            get_bound_spec("nope")

    def test_propagate_error(self):
        error = propagate_error(lambda x: x * x, (2.0,), (0.1,))
        assert error == pytest.approx(0.41)
        assert propagate_error(lambda x: x, (1.0,), (0.0,)) == 0.0


class TestShapes:
    def test_tv_bl(self):
        assert tv_bl_shape(4, 0.25) == pytest.approx(1.0)

    def test_w1_bl_switches_to_log_branch(self):
        assert w1_bl_shape(1, 0.5) == pytest.approx(0.5)
        assert w1_bl_shape(1, math.exp(-3.0)) == pytest.approx(3.0 * math.exp(-3.0))
        assert w1_bl_shape(1, 0.0) == 0.0

    def test_bhvv(self):
        assert bhvv_shape(math.exp(-4.0)) == pytest.approx(math.sqrt(4.0 * math.exp(-4.0)))
        assert bhvv_shape(0.5) == pytest.approx(math.sqrt(0.5))

    def test_h_tv_terms(self):
        assert h_tv_shape(1, 1.0) == pytest.approx(math.log(2.0))
        assert h_tv_shape(1, 1.0, bounded_isotropic_constant=True) == pytest.approx(1.0)
        assert h_tv_shape(1, math.exp(-3.0)) == pytest.approx(9.0 * math.exp(-3.0))

    def test_wq_wp_reduces_to_power_when_logs_are_small(self):
        # log((c·q)^q / W_p^p) < √n ⇒ shape = (√n)^{q−p}·W_p^p
        assert wq_wp_shape(16, 1.0, 2.0, 1.0, 1.0) == pytest.approx(4.0)


class TestComparisons:
    @pytest.fixture
    def pair(self, uniform, laplace):
        return MetricPanel(uniform, laplace, FAST)

    def test_classical_directions_hold(self, pair):
        mu, nu = pair.mu, pair.nu
        for check in (check_classical_bl_tv(mu, nu, FAST, pair),
                      check_classical_bl_w1(mu, nu, FAST, pair),
                      check_kolmogorov_tv(mu, nu, FAST, pair),
                      check_pinsker(mu, nu, FAST, pair),
                      check_wp_monotone(mu, nu, 1.0, 2.0, FAST, pair)):
            assert check.holds, check.to_dict()

    def test_pinsker_with_infinite_divergence(self, gaussian, uniform):
        check = check_pinsker(gaussian, uniform, FAST)
        assert check.unit_rhs == math.inf and check.holds

    def test_reversed_checks_carry_their_inputs(self, pair):
        tv_check = check_tv_bl(pair.mu, pair.nu, settings=FAST, panel=pair)
        assert tv_check.inputs["d_tv"] == pair.tv().value
        assert tv_check.inputs["d_bl"] == pair.bl().value
        w1_check = check_w1_bl(pair.mu, pair.nu, constant=100.0, settings=FAST, panel=pair)
        assert w1_check.constant == 100.0 and w1_check.holds

    def test_reversed_bound_rejects_non_isotropic_input(self, gaussian):
        with pytest.raises(ValueError, match="not isotropic"):
            check_tv_bl(Gaussian1D(0.0, 2.0), gaussian, settings=FAST)

    def test_wq_wp_orders(self, pair):
        with pytest.raises(ValueError):
            check_wq_wp(pair.mu, pair.nu, 2.0, 2.0, settings=FAST, panel=pair)
        check = check_wq_wp(pair.mu, pair.nu, 1.0, 2.0, settings=FAST, panel=pair)
        assert check.key == "wq-wp[p=1,q=2]"
        assert check.lhs == pytest.approx(pair.wasserstein(2.0).value ** 2)

    def test_bhvv_is_one_dimensional(self):
        with pytest.raises(ValueError, match="one-dimensional"):
            check_bhvv(make_standard_gaussian(2), settings=FAST)

    def test_gaussian_reference_bounds(self, laplace):
        bhvv = check_bhvv(laplace, settings=FAST)
        assert bhvv.inputs["nu"] == "gaussian"
        h_tv = check_h_tv(laplace, bounded_isotropic_constant=True, settings=FAST)
        assert h_tv.bound_id == "h-tv-bounded-Lf"
        assert h_tv.lhs > 0

    def test_dispatch_expands_orders(self, pair):
        checks = evaluate_pair_bounds(["wp-monotone", "pinsker"], pair, FAST)
        assert [c.key for c in checks] == ["wp-monotone[p=1,q=2]", "wp-monotone[p=2,q=4]",
                                           "pinsker"]

    def test_dispatch_rejects_lemma_ids(self, pair):
        with pytest.raises(ValueError, match="not a pair-level bound"):
            evaluate_pair_bounds(["min-lemma"], pair, FAST)

    def test_classical_checks_use_the_lower_bl_end_in_two_dimensions(self):
        panel = MetricPanel(make_isotropic_laplace(2), make_standard_gaussian(2), FAST)
        lower, upper = panel.bl_bounds()
        for check in (check_classical_bl_tv(panel.mu, panel.nu, FAST, panel),
                      check_classical_bl_w1(panel.mu, panel.nu, FAST, panel)):
            assert check.lhs == lower.value
            assert check.lhs <= upper.value
            assert check.holds

    def test_classical_suite_in_two_dimensions(self):
        mu = convolve_interpolate(make_isotropic_laplace(2), 0.4, grid_nodes=4096)
        panel = MetricPanel(mu, make_standard_gaussian(2), FAST)
        bound_ids = [b for b in CLASSICAL_BOUNDS if b != "kolmogorov-tv"]
        for check in evaluate_pair_bounds(bound_ids, panel, FAST):
            assert check.holds, check.to_dict()


class TestFitting:
    def test_fit_constant_is_the_largest_ratio(self):
        checks = [BoundCheck("tv-bl", 2.0, 1.0), BoundCheck("tv-bl", 1.0, 1.0)]
        assert fit_constant("tv-bl", checks) == pytest.approx(2.0)

    def test_rate_fit_is_the_smallest_rate(self):
        checks = [BoundCheck("paouris-tail", math.exp(-3.0), 1.0),
                  BoundCheck("paouris-tail", math.exp(-4.0), 1.0)]
        assert fit_constant("paouris-tail", checks) == pytest.approx(3.0)

    def test_all_vacuous_suite_raises(self):
        with pytest.raises(ValueError, match="all-vacuous"):
            fit_constant("w1-bl", [BoundCheck("w1-bl", 0.0, 0.0)])

    def test_fixed_bounds_have_nothing_to_fit(self):
        with pytest.raises(ValueError, match="no free constant"):
            fit_constant("pinsker", [BoundCheck("pinsker", 0.1, 0.2)])

    def test_fitted_constant_is_tight(self):
        checks = [BoundCheck("tv-bl", 2.0, 1.0), BoundCheck("tv-bl", 1.0, 1.0)]
        constant = fit_constant("tv-bl", checks)
        scored = apply_constant(checks, constant)
        assert all(c.holds for c in scored)
        assert is_tight(scored, constant)
        assert not is_tight(apply_constant(checks, 3.0), 3.0)

    def test_fit_suite_sorts_keys_and_marks_vacuous(self):
        checks = [BoundCheck("w1-bl", 0.0, 0.0), BoundCheck("tv-bl", 0.2, 0.1),
                  BoundCheck("pinsker", 0.1, 0.2)]
        fits = fit_suite(checks)
        assert list(fits) == ["pinsker", "tv-bl", "w1-bl"]
        assert fits["w1-bl"].constant is None and fits["w1-bl"].all_vacuous
        assert fits["tv-bl"].constant == pytest.approx(2.0) and fits["tv-bl"].tight
        assert fits["pinsker"].constant is None and fits["pinsker"].failures == 0

    def test_fit_suite_honours_given_constants(self):
        fits = fit_suite([BoundCheck("tv-bl", 0.2, 0.1)], constants={"tv-bl": 1.5})
        assert fits["tv-bl"].constant == 1.5
        assert fits["tv-bl"].failures == 1
