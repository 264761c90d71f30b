"""
ACCEPTANCE SUITE
================

PURPOSE:
--------
The `verify` subcommand: twelve numbered criteria, each a self-contained
numerical experiment that ends in PASS or FAIL.

   1  closed-form oracles           7  norm concentration fits
   2  classical inequalities        8  log-density variance
   3  reversed-bound fits           9  max entropy, isotropic constant
   4  duality consistency          10  convergence along interpolation
   5  optimization lemma           11  envelope figure
   6  deconvolution lemma          12  sweep determinism

A criterion that raises is a FAIL carrying the exception message; the
others still run.

DEBUGGING TIPS:
---------------
  • `AcceptanceSuite(settings).run(only=[4])` runs a single criterion
  • Every FAIL detail names the first offending instance
"""

import logging
import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy import stats

from ..bounds.fitting import (
    CLASSICAL_BOUNDS,
    GAUSSIAN_REFERENCE_BOUNDS,
    REVERSED_PAIR_BOUNDS,
    FitResult,
    bobkov_madiman_suite,
    catalog_pair_suite,
    eldan_klartag_suite,
    evaluate_pair_bounds,
    fit_constant,
    fit_suite,
    paouris_suite,
)
from ..bounds.lemmas import (
    chi_tail,
    check_isotropic_constant,
    check_max_entropy,
    deconvolution_gap_1d,
    gaussian_deconvolution_gap,
    min_lemma_bound,
    min_lemma_infimum,
    moment_convergence,
    paouris_moment,
    bobkov_madiman_variance,
)
from ..distributions.catalog import (
    catalog_1d,
    catalog_nd,
    catalog_pairs_1d,
    convolve_interpolate,
    make_isotropic_laplace,
    make_isotropic_uniform,
    make_standard_gaussian,
)
from ..distributions.families import Gaussian1D
from ..metrics.entropy import differential_entropy, relative_entropy
from ..metrics.one_dim import (
    bl_distance_1d,
    kolmogorov_distance_1d,
    tv_distance_1d,
    w1_dual_1d,
    wasserstein_p_1d,
)
from ..metrics.panel import MetricPanel
from ..metrics.result import Z_95
from ..utils.plotting import envelope, plot_envelope
from ..utils.random_streams import substream
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .experiment_model import ExperimentConfig, SuiteEntry
from .sweep_controller import SweepController

logger = logging.getLogger(__name__)

CLASSICAL_TOLERANCE = 1e-6
ORACLE_TOLERANCE = 1e-6
GRID_STABILITY = 0.10
MIN_LEMMA_DRAWS = 10_000
CONVERGENCE_T_VALUES = (0.8, 0.4, 0.2, 0.1)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def format_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:>2}. {self.title:<34} {self.detail}"


class AcceptanceSuite:
    """
    Runs the acceptance criteria.

    Example:
        >>> suite = AcceptanceSuite(DEFAULT_SETTINGS, debug=True)
        >>> results = suite.run(only=[1, 5])
        >>> all(r.passed for r in results)
    """

    TITLES = {
        1: "closed-form oracles",
        2: "classical inequalities",
        3: "reversed-bound constants",
        4: "duality consistency",
        5: "optimization lemma",
        6: "deconvolution lemma",
        7: "norm concentration",
        8: "log-density variance",
        9: "max entropy and isotropic constant",
        10: "convergence along interpolation",
        11: "envelope figure",
        12: "sweep determinism",
    }

    def __init__(
        self,
        settings: NumericsSettings = DEFAULT_SETTINGS,
        debug: bool = False,
        progress_callback: Optional[Callable[[str, float], None]] = None,
    ):
        self.settings = settings
        self.debug = debug
        self.progress_callback = progress_callback
        self._reversed_fits: Optional[Dict[str, FitResult]] = None

    def run(self, only: Optional[Sequence[int]] = None) -> List[CriterionResult]:
        numbers = sorted(only) if only else sorted(self.TITLES)
        results = []
        for i, number in enumerate(numbers):
            if number not in self.TITLES:
                raise ValueError(f"no acceptance criterion {number}")
            self._report_progress(f"criterion {number}: {self.TITLES[number]}",
                                  100.0 * i / len(numbers))
            start = time.perf_counter()
            try:
                passed, detail = getattr(self, f"_criterion_{number}")()
            except Exception as e:  # a crashing criterion is a failed criterion
                logger.exception("[VERIFY] criterion %d raised", number)
                passed, detail = False, f"{type(e).__name__}: {e}"
            result = CriterionResult(number, self.TITLES[number], passed, detail,
                                     time.perf_counter() - start)
            logger.info("[VERIFY] %s", result.format_line())
            results.append(result)
        self._report_progress("verification finished", 100.0)
        return results

    def _report_progress(self, message: str, percent: float):
        if self.progress_callback:
            self.progress_callback(message, percent)
        elif self.debug:
            logger.info("[PROGRESS] %s (%.0f%%)", message, percent)

    # ── helpers ────────────────────────────────────────────────────
    def _classical_settings(self) -> NumericsSettings:
        return self.settings.with_overrides(
            {"tolerance": max(self.settings.tolerance, CLASSICAL_TOLERANCE)})

    def _doubled_settings(self) -> NumericsSettings:
        return self.settings.with_overrides({
            "grid_size": 2 * self.settings.grid_size,
            "convolution_nodes": 2 * self.settings.convolution_nodes,
            "scan_nodes": 2 * self.settings.scan_nodes,
        })

    def reversed_fits(self) -> Dict[str, FitResult]:
        if self._reversed_fits is None:
            checks = catalog_pair_suite(REVERSED_PAIR_BOUNDS + GAUSSIAN_REFERENCE_BOUNDS,
                                        self.settings)
            self._reversed_fits = fit_suite(checks)
        return self._reversed_fits

    # ── criteria ───────────────────────────────────────────────────
    def _criterion_1(self):
        s = self.settings
        g0, g1 = Gaussian1D(0.0, 1.0), Gaussian1D(1.0, 1.0)
        half = stats.norm.cdf(0.5)
        comparisons = [
            ("tv", tv_distance_1d(g0, g1, s).value, 4.0 * half - 2.0, ORACLE_TOLERANCE),
            ("kolmogorov", kolmogorov_distance_1d(g0, g1, s).value, 2.0 * half - 1.0,
             ORACLE_TOLERANCE),
            ("w1", wasserstein_p_1d(g0, g1, 1.0, s).value, 1.0, ORACLE_TOLERANCE),
            ("w2", wasserstein_p_1d(g0, g1, 2.0, s).value, 1.0, ORACLE_TOLERANCE),
            ("kl", relative_entropy(Gaussian1D(0.0, 2.0), g0, s).value, 1.5 - math.log(2.0),
             ORACLE_TOLERANCE),
            ("entropy", differential_entropy(g0, s).value,
             0.5 * math.log(2.0 * math.pi * math.e), 1e-7),
        ]
        worst = max(comparisons, key=lambda c: abs(c[1] - c[2]) / c[3])
        passed = all(abs(value - oracle) <= tol for _, value, oracle, tol in comparisons)
        return passed, f"worst {worst[0]}: |error| = {abs(worst[1] - worst[2]):.2e}"

    def _criterion_2(self):
        s = self._classical_settings()
        checks = []
        for _, mu, nu in catalog_pairs_1d(s.convolution_nodes):
            checks += evaluate_pair_bounds(CLASSICAL_BOUNDS, MetricPanel(mu, nu, s), s)
        nd_bounds = [b for b in CLASSICAL_BOUNDS if b != "kolmogorov-tv"]
        for n in (2, 4, 8):
            members = catalog_nd(n, grid_nodes=s.convolution_nodes)
            for i, (_, mu) in enumerate(members):
                for _, nu in members[i + 1:]:
                    checks += evaluate_pair_bounds(nd_bounds, MetricPanel(mu, nu, s), s)
        failed = [c for c in checks if not c.holds]
        if failed:
            c = failed[0]
            return False, f"{len(failed)}/{len(checks)} fail; first {c.key} {c.inputs} slack={c.slack:.3g}"
        return True, f"{len(checks)} checks hold"

    def _criterion_3(self):
        fits = self.reversed_fits()
        doubled = fit_suite(catalog_pair_suite(
            REVERSED_PAIR_BOUNDS + GAUSSIAN_REFERENCE_BOUNDS, self._doubled_settings()))
        problems = []
        for key, fit in fits.items():
            if fit.constant is None:
                continue
            if not math.isfinite(fit.constant):
                problems.append(f"{key} infinite")
                continue
            other = doubled[key].constant
            if other is None or abs(other - fit.constant) > GRID_STABILITY * fit.constant:
                problems.append(f"{key} moved {fit.constant:.4g} -> {other}")
            if not fit.tight:
                problems.append(f"{key} not tight")
        fitted = sum(f.constant is not None for f in fits.values())
        if problems:
            return False, "; ".join(problems)
        return True, f"{fitted} constants finite, grid-stable and tight"

    def _criterion_4(self):
        s = self.settings
        fine = s.with_overrides({"grid_size": 2 * s.grid_size})
        worst_w1, worst_bl = 0.0, -math.inf
        for pair_id, mu, nu in catalog_pairs_1d(s.convolution_nodes):
            gap = abs(wasserstein_p_1d(mu, nu, 1.0, s).value - w1_dual_1d(mu, nu, s).value)
            worst_w1 = max(worst_w1, gap)
            coarse = bl_distance_1d(mu, nu, settings=s)
            refined = bl_distance_1d(mu, nu, settings=fine)
            excess = abs(refined.value - coarse.value) - max(coarse.abs_error, 1e-9)
            worst_bl = max(worst_bl, excess)
        passed = worst_w1 <= ORACLE_TOLERANCE and worst_bl <= 0.0
        return passed, f"max |W1 - W1_dual| = {worst_w1:.2e}, d_BL excess over error {worst_bl:.2e}"

    def _criterion_5(self):
        rng = substream(self.settings.seed, "verify", "min-lemma")
        A, B = np.exp(rng.uniform(-7, 7, size=(2, MIN_LEMMA_DRAWS)))
        M = rng.uniform(0.01, 10.0, MIN_LEMMA_DRAWS)
        k = rng.uniform(0.1, 4.0, MIN_LEMMA_DRAWS)
        bad = 0
        for a, b, m, kk in zip(A, B, M, k):
            t_star, value, bound = min_lemma_bound(a, b, m, kk)
            _, infimum = min_lemma_infimum(a, b, m, kk, grid_points=4001)
            if not (value <= bound and t_star >= m and infimum <= value * (1 + 1e-12) + 1e-9):
                bad += 1
        return bad == 0, f"{MIN_LEMMA_DRAWS - bad}/{MIN_LEMMA_DRAWS} draws consistent"

    def _criterion_6(self):
        s = self.settings
        checks = eldan_klartag_suite(s)
        c = fit_constant("eldan-klartag", checks)
        gaussian_error = max(
            abs(deconvolution_gap_1d(make_standard_gaussian(1), t, s).value
                - gaussian_deconvolution_gap(t))
            for t in s.t_grid)
        monotone = True
        for label, f in catalog_1d(s.convolution_nodes):
            gaps = [deconvolution_gap_1d(f, t, s) for t in sorted(s.t_grid)]
            if any(a.value > b.value + a.abs_error + b.abs_error for a, b in zip(gaps, gaps[1:])):
                monotone = False
        passed = math.isfinite(c) and gaussian_error <= 1e-5 and monotone
        return passed, f"c = {c:.4g}, Gaussian error {gaussian_error:.1e}, monotone={monotone}"

    def _criterion_7(self):
        s = self.settings
        checks = paouris_suite(s)
        C = fit_constant("paouris-moment", checks)
        c = fit_constant("paouris-tail", checks)
        problems = []
        if not (math.isfinite(C) and math.isfinite(c) and c > 0):
            problems.append(f"fits C={C}, c={c}")
        for n in s.paouris_dimensions:
            gaussian = make_standard_gaussian(n)
            if abs(paouris_moment(gaussian, 2.0, settings=s).value - math.sqrt(n)) > 1e-9:
                problems.append(f"E|Z|^2 mismatch at n={n}")
            count = s.mc_samples
            norms = np.linalg.norm(
                gaussian.sample(count, substream(s.seed, "verify", "chi", n)).reshape(count, -1),
                axis=1)
            for m in s.radius_multipliers:
                R = m * math.sqrt(n)
                hits = norms >= R
                band = Z_95 * hits.std(ddof=1) / math.sqrt(count) + 3.0 / count
                if abs(hits.mean() - chi_tail(n, R)) > band:
                    problems.append(f"chi tail mismatch at n={n}, R={R:g}")
        truncated = paouris_suite(s, s.paouris_dimensions[:-1])
        if fit_constant("paouris-moment", truncated) > C or fit_constant("paouris-tail", truncated) < c:
            problems.append("truncated suite fits beyond the full suite")
        if problems:
            return False, "; ".join(problems)
        return True, f"C = {C:.4g}, c = {c:.4g}"

    def _criterion_8(self):
        s = self.settings
        C = fit_constant("bobkov-madiman", bobkov_madiman_suite(s))
        problems = []
        for n in s.paouris_dimensions:
            gaussian = bobkov_madiman_variance(make_standard_gaussian(n), settings=s)
            if abs(gaussian.value - n / 2.0) > gaussian.abs_error + 1e-8:
                problems.append(f"Gaussian n={n}: {gaussian.value:.6g}")
            uniform = bobkov_madiman_variance(make_isotropic_uniform(n), settings=s)
            if uniform.value != 0.0:
                problems.append(f"uniform n={n}: {uniform.value:.3g}")
        if problems or not math.isfinite(C):
            return False, "; ".join(problems) or f"C = {C}"
        return True, f"C = {C:.4g}"

    def _criterion_9(self):
        s = self.settings
        members = list(catalog_1d(s.convolution_nodes))
        for n in (2, 4, 8):
            members += catalog_nd(n, grid_nodes=s.convolution_nodes)
        worst_entropy, worst_lf = math.inf, math.inf
        for _, mu in members:
            worst_entropy = min(worst_entropy, check_max_entropy(mu, s).slack)
            lf_check = check_isotropic_constant(mu, s)
            worst_lf = min(worst_lf, lf_check.slack if lf_check.holds else -math.inf)
        passed = worst_entropy >= -1e-7 and worst_lf > 0
        return passed, f"min entropy slack {worst_entropy:.2e}, min L_f slack {worst_lf:.4g}"

    def _criterion_10(self):
        s = self.settings
        problems = []
        for make in (make_isotropic_uniform, make_isotropic_laplace):
            for n in (1, 2):
                base = make(n)
                gaussian = make_standard_gaussian(n)
                series: Dict[str, list] = {"bl": [], "tv": [], "kl": []}
                for t in CONVERGENCE_T_VALUES:
                    panel = MetricPanel(convolve_interpolate(base, t, s.convolution_nodes),
                                        gaussian, s)
                    series["bl"].append(panel.bl())
                    series["tv"].append(panel.tv())
                    series["kl"].append(panel.kl())
                for metric, values in series.items():
                    for a, b in zip(values, values[1:]):
                        if b.value > a.value + a.abs_error + b.abs_error:
                            problems.append(f"{base.label} {metric} not decreasing")
                            break
                    if values[-1].value > 0.5 * values[0].value:
                        problems.append(f"{base.label} {metric} did not halve")
            rows = moment_convergence(make(1), CONVERGENCE_T_VALUES, s)
            gaps = [abs(r["m4"] - 3.0) for r in rows]
            if any(abs(r["m2"] - 1.0) > 1e-6 for r in rows) or gaps != sorted(gaps, reverse=True):
                problems.append(f"{make(1).label} moments do not converge")
        if problems:
            return False, "; ".join(problems)
        return True, "d_BL, d_TV and H decrease; moments approach 1 and 3"

    def _criterion_11(self):
        values = {
            1.0: float(envelope(1.0)),
            math.exp(-1.0): float(envelope(math.exp(-1.0))),
            math.exp(-2.0): float(envelope(math.exp(-2.0))),
        }
        expected = {1.0: 1.0, math.exp(-1.0): math.exp(-1.0), math.exp(-2.0): 2.0 * math.exp(-2.0)}
        shape_ok = all(abs(values[x] - expected[x]) <= 1e-12 for x in values)

        fit = self.reversed_fits().get("w1-bl")
        if fit is None or fit.constant is None:
            return False, "no fitted w1-bl constant"
        live = [c for c in fit.checks if not c.vacuous]
        scatter = [(c.inputs["d_bl"], c.inputs["w1"]) for c in live]
        under = all(c.inputs["w1"] <= fit.constant * float(envelope(c.inputs["d_bl"]))
                    + c.numerical_tolerance for c in live)
        with tempfile.TemporaryDirectory() as tmp:
            path = plot_envelope(Path(tmp) / "envelope.svg", scatter, fit.constant)
            svg_ok = path.read_text().lstrip().startswith("<?xml")
        passed = shape_ok and under and svg_ok
        return passed, f"f values exact={shape_ok}, scatter under C*f={under}, svg={svg_ok}"

    def _criterion_12(self):
        s = self.settings.with_overrides({"mc_samples": min(self.settings.mc_samples, 20_000)})
        config = ExperimentConfig(
            name="determinism",
            seed=s.seed,
            suite=[
                SuiteEntry("uniform-1d", {"family": "uniform", "n": 1}, t=[0.8, 0.4]),
                SuiteEntry("laplace-2d", {"family": "laplace", "n": 2}, t=[0.4]),
            ],
            metrics=["bl", "kl", "tv", "w1", "w2"],
            bounds=["classical-bl-tv", "classical-bl-w1", "pinsker", "tv-bl"],
            numerics=s,
        )
        outputs = []
        with tempfile.TemporaryDirectory() as tmp:
            for run in ("first", "second"):
                SweepController(config).run(Path(tmp) / run)
                outputs.append((Path(tmp) / run / "sweep.csv").read_bytes())
        identical = outputs[0] == outputs[1]
        return identical, f"sweep.csv identical across reruns: {identical} ({len(outputs[0])} bytes)"


def verify(settings: NumericsSettings = DEFAULT_SETTINGS, only: Optional[Sequence[int]] = None,
           debug: bool = False) -> List[CriterionResult]:
    """Run the acceptance suite and return one result per criterion."""
    return AcceptanceSuite(settings, debug=debug).run(only)
