"""
PROOF INGREDIENTS
=================

PURPOSE:
--------
Numerical versions of the facts the reversed comparisons are built from,
each with a `check_*` wrapper that returns a BoundCheck:

  • min_lemma_bound / min_lemma_infimum   inf_{t≥M} A·t^k + B·e^{−t}
  • smooth_density_1d / deconvolution_gap_1d   ‖f − f∗φ_t‖₁ ≤ c·n·t
  • paouris_tail / paouris_moment         ‖X‖ concentrates at scale √n
  • bobkov_madiman_variance               Var(log f(Y)) ≤ C·n
  • isotropic_constant                    L_f = ‖f‖_∞^{1/n} ≤ 2⁸·√n
  • differential entropy vs γₙ            Ent(μ) ≤ n·log√(2πe)

and the intermediate steps of the two main arguments:

  • check_smoothing_tradeoff   d_TV ≤ d_BL·max{1, 1/t} + 2·c·n·t
  • check_truncation_tradeoff  W₁ ≤ max{1,R}·d_BL + E‖X‖1{‖X‖≥R} + E‖Y‖1{‖Y‖≥R}

plus three diagnostics: Gaussian reweighting identities, the
non-isotropic counterexample and moment convergence along an
interpolation sweep.

GAUSSIAN ORACLES:
-----------------
For Z ~ γₙ, ‖Z‖ is chi-distributed with n degrees of freedom:

    P[‖Z‖ ≥ R]          = chi.sf(R; n)
    (E‖Z‖^p)^{1/p}      = (2^{p/2}·Γ((n+p)/2)/Γ(n/2))^{1/p}
    E‖Z‖·1{‖Z‖ ≥ R}     = E‖Z‖ · chi.sf(R; n+1)

DEBUGGING TIPS:
---------------
  • deconvolution gaps use the closed-form smoothed law whenever f is
    Gaussian, uniform, Laplace or one of their interpolations; compare
    with smooth_density_1d (the FFT route) if a gap looks off
  • Monte-Carlo moments above p = 10 are rejected: the estimator's
    variance is dominated by a handful of samples there
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize, special, stats

from ..distributions.catalog import convolve_interpolate, make_standard_gaussian
from ..distributions.density import Density1D, LogConcaveDensity
from ..distributions.families import Convolution1D, Gaussian1D
from ..distributions.grid import GridFunction, convolve_on_grid, uniform_grid
from ..metrics.entropy import differential_entropy
from ..metrics.one_dim import bl_distance_1d, quad, require_1d, tv_distance_1d
from ..metrics.panel import MetricPanel
from ..metrics.result import MetricResult, monte_carlo_half_width
from ..utils.random_streams import substream
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .comparisons import is_standard_gaussian
from .model import BoundCheck, make_check, require_isotropic

logger = logging.getLogger(__name__)

# Monte-Carlo moments are trusted up to this order
MAX_MC_MOMENT_ORDER = 10.0
# Kernel half-width in units of t for smooth_density_1d
KERNEL_WIDTH = 10.0
MIN_LEMMA_GRID = 200_001
LOG_SQRT_2PI_E = 0.5 * math.log(2.0 * math.pi * math.e)


# ═══════════════════════════════════════════════════════════════
# OPTIMIZATION LEMMA
# ═══════════════════════════════════════════════════════════════

def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")


def min_lemma_objective(t, A: float, B: float, k: float):
    return A * np.power(t, k) + B * np.exp(-np.asarray(t, dtype=float))


def min_lemma_bound(A: float, B: float, M: float, k: float) -> Tuple[float, float, float]:
    """
    Evaluate A·t^k + B·e^{−t} at t* = max{M, log(B/A)}.

    Returns:
        (t_star, value, bound) with bound = A·(1 + t_star^k) and
        value ≤ bound in floating point, not only in exact arithmetic

    Example:
        >>> min_lemma_bound(1.0, 1.0, 3.0, 1.0)
        (3.0, 3.0497..., 4.0)
    """
    _check_positive(A=A, B=B, M=M, k=k)
    log_ratio = math.log(B / A)
    t_star = max(M, log_ratio)
    power_term = A * t_star ** k
    # B·e^{−t*} = A·e^{log(B/A) − t*} and the exponent is ≤ 0 exactly
    tail_term = A * math.exp(log_ratio - t_star)
    return t_star, power_term + tail_term, A + power_term


def min_lemma_infimum(A: float, B: float, M: float, k: float,
                      grid_points: int = MIN_LEMMA_GRID) -> Tuple[float, float]:
    """
    Dense-grid infimum of A·t^k + B·e^{−t} over t ≥ M, refined with a
    bounded scalar minimization around the best grid node.

    The search stops at the t where A·t^k alone reaches the value at t*,
    beyond which nothing can be smaller.

    Returns:
        (t_min, infimum)
    """
    _check_positive(A=A, B=B, M=M, k=k)
    _, value, _ = min_lemma_bound(A, B, M, k)
    upper = max(M, (value / A) ** (1.0 / k))
    if upper <= M:
        return M, float(min_lemma_objective(M, A, B, k))

    grid = np.linspace(M, upper, grid_points)
    values = min_lemma_objective(grid, A, B, k)
    best = int(np.argmin(values))
    lo, hi = grid[max(best - 1, 0)], grid[min(best + 1, grid.size - 1)]
    refined = optimize.minimize_scalar(
        lambda t: float(min_lemma_objective(t, A, B, k)),
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-14},
    )
    if refined.success and refined.fun < values[best]:
        return float(refined.x), float(refined.fun)
    return float(grid[best]), float(values[best])


def check_min_lemma(A: float, B: float, M: float, k: float,
                    settings: NumericsSettings = DEFAULT_SETTINGS) -> BoundCheck:
    """value ≤ bound, with the dense-grid infimum recorded alongside."""
    t_star, value, bound = min_lemma_bound(A, B, M, k)
    t_min, infimum = min_lemma_infimum(A, B, M, k)
    return make_check("min-lemma", value, bound, settings,
                      inputs={"A": A, "B": B, "M": M, "k": k, "t_star": t_star,
                              "t_min": t_min, "infimum": infimum})


# ═══════════════════════════════════════════════════════════════
# DECONVOLUTION
# ═══════════════════════════════════════════════════════════════

def _cell_averages(cdf, nodes: np.ndarray, h: float) -> np.ndarray:
    return (np.asarray(cdf(nodes + 0.5 * h)) - np.asarray(cdf(nodes - 0.5 * h))) / h


def smooth_density_1d(f: LogConcaveDensity, t: float, nodes: Optional[int] = None,
                      settings: NumericsSettings = DEFAULT_SETTINGS) -> GridFunction:
    """
    f ∗ φ_t on a uniform grid by FFT convolution.

    Both f and the Gaussian kernel enter as cell averages (CDF
    differences), so jumps of f cost O(h) rather than O(1) per cell.
    """
    require_1d(f)
    if not t > 0:
        raise ValueError(f"smoothing width t must be positive, got {t}")
    count = int(nodes or settings.convolution_nodes) | 1
    lo, hi = f.effective_support(settings.support_epsilon)
    half = max(abs(lo), abs(hi)) + KERNEL_WIDTH * t
    grid = uniform_grid(-half, half, count)
    h = grid[1] - grid[0]

    base = GridFunction(grid, _cell_averages(f.cdf, grid, h))
    steps = int(math.ceil(KERNEL_WIDTH * t / h))
    offsets = np.arange(-steps, steps + 1) * h
    kernel = _cell_averages(lambda x: stats.norm.cdf(x, scale=t), offsets, h)
    return convolve_on_grid(base, kernel)


def smoothed_law(f: Density1D, t: float,
                 settings: NumericsSettings = DEFAULT_SETTINGS) -> Density1D:
    """f ∗ φ_t as a density; closed form whenever f's law has one."""
    return Convolution1D([f, Gaussian1D(0.0, t)], [1.0, 1.0], settings.convolution_nodes,
                         label=f"{f.label}*phi_{t:g}")


def deconvolution_gap_1d(f: LogConcaveDensity, t: float,
                         settings: NumericsSettings = DEFAULT_SETTINGS) -> MetricResult:
    """‖f − f∗φ_t‖₁ by quadrature."""
    require_1d(f)
    if not t > 0:
        raise ValueError(f"smoothing width t must be positive, got {t}")
    return tv_distance_1d(f, smoothed_law(f, t, settings), settings)


def gaussian_deconvolution_gap(t: float) -> float:
    """‖N(0,1) − N(0,1+t²)‖₁ in closed form (the densities cross at ±x₀)."""
    s1, s2 = 1.0, math.sqrt(1.0 + t * t)
    x0 = math.sqrt(2.0 * s1 ** 2 * s2 ** 2 * math.log(s2 / s1) / (s2 ** 2 - s1 ** 2))
    return 4.0 * (stats.norm.cdf(x0 / s1) - stats.norm.cdf(x0 / s2))


def check_eldan_klartag(f: LogConcaveDensity, t: float, constant: Optional[float] = None,
                        settings: NumericsSettings = DEFAULT_SETTINGS) -> BoundCheck:
    """‖f − f∗φ_t‖₁ ≤ c·n·t (n = 1)."""
    require_isotropic(f)
    gap = deconvolution_gap_1d(f, t, settings)
    return make_check("eldan-klartag", gap.value, f.dimension * t, settings, constant,
                      lhs_error=gap.abs_error,
                      inputs={"mu": f.label, "n": f.dimension, "t": t})


# ═══════════════════════════════════════════════════════════════
# NORM CONCENTRATION
# ═══════════════════════════════════════════════════════════════

def chi_tail(n: int, R: float) -> float:
    """P[‖Z‖ ≥ R] for Z ~ γₙ."""
    return float(stats.chi.sf(R, df=n))


def chi_moment(n: int, p: float) -> float:
    """(E‖Z‖^p)^{1/p} for Z ~ γₙ."""
    log_moment = 0.5 * p * math.log(2.0) + special.gammaln(0.5 * (n + p)) - special.gammaln(0.5 * n)
    return float(math.exp(log_moment / p))


def chi_partial_mean(n: int, R: float) -> float:
    """E‖Z‖·1{‖Z‖ ≥ R} for Z ~ γₙ."""
    return chi_moment(n, 1.0) * float(stats.chi.sf(R, df=n + 1))


def _norm_samples(mu: LogConcaveDensity, count: int, seed: int, *tags) -> np.ndarray:
    rng = substream(seed, *tags, mu.label)
    return np.linalg.norm(mu.sample(count, rng).reshape(count, -1), axis=1)


def _integrate_1d(d: Density1D, func, settings: NumericsSettings,
                  lower: float = -math.inf, upper: float = math.inf) -> Tuple[float, float]:
    """∫ func(x)·f(x) over [lower, upper] ∩ effective support, split at 0 and breakpoints."""
    lo, hi = d.effective_support(settings.support_epsilon)
    lo, hi = max(lo, lower), min(hi, upper)
    if not hi > lo:
        return 0.0, 0.0
    cuts = sorted({lo, hi, *(x for x in [0.0, *d.breakpoints()] if lo < x < hi)})
    total, error = 0.0, 0.0
    for left, right in zip(cuts[:-1], cuts[1:]):
        value, piece_error = quad(lambda x: func(x) * float(d.pdf(x)), left, right, settings)
        total += value
        error += piece_error
    return total, error


def absolute_moment_1d(d: Density1D, p: float,
                       settings: NumericsSettings = DEFAULT_SETTINGS) -> Tuple[float, float]:
    """E|X|^p and its quadrature error."""
    value, error = _integrate_1d(d, lambda x: abs(x) ** p, settings)
    return value, error + settings.support_epsilon


def paouris_tail(mu: LogConcaveDensity, R: float, sample_count: Optional[int] = None,
                 seed: Optional[int] = None,
                 settings: NumericsSettings = DEFAULT_SETTINGS) -> MetricResult:
    """P[‖X‖ ≥ R]: chi tail for γₙ, CDFs in 1-D, Monte Carlo otherwise."""
    if not R > 0:
        raise ValueError(f"radius must be positive, got {R}")
    n = mu.dimension
    if is_standard_gaussian(mu):
        return MetricResult(chi_tail(n, R), 0.0, "closed-form", f"chi({n}) tail")
    if isinstance(mu, Density1D):
        value = float(mu.cdf(-R)) + float(mu.sf(R))
        return MetricResult(value, 1e-14, "closed-form", "two-sided CDF tail")

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    hits = (_norm_samples(mu, count, seed, "paouris_tail", R) >= R).astype(float)
    return MetricResult(
        value=float(hits.mean()),
        abs_error=monte_carlo_half_width(hits.std(ddof=1), count),
        method="monte-carlo",
        detail=f"{int(hits.sum())} of {count} samples beyond R",
    )


def paouris_moment(mu: LogConcaveDensity, p: float, sample_count: Optional[int] = None,
                   seed: Optional[int] = None,
                   settings: NumericsSettings = DEFAULT_SETTINGS) -> MetricResult:
    """
    (E‖X‖^p)^{1/p}.

    Raises:
        ValueError: p < 1, or p > 10 where Monte Carlo would be needed
    """
    p = float(p)
    if p < 1:
        raise ValueError(f"moment order must be >= 1, got {p}")
    n = mu.dimension
    if is_standard_gaussian(mu):
        return MetricResult(chi_moment(n, p), 0.0, "closed-form", f"chi({n}) moment")
    if isinstance(mu, Density1D):
        moment, error = absolute_moment_1d(mu, p, settings)
        value = moment ** (1.0 / p)
        return MetricResult(value, value / (p * moment) * error if moment > 0 else error,
                            "quadrature", f"E|X|^{p:g} by quadrature")
    if p > MAX_MC_MOMENT_ORDER:
        raise ValueError(
            f"Monte-Carlo moments are limited to p <= {MAX_MC_MOMENT_ORDER:g}, got {p:g}"
        )

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    powers = _norm_samples(mu, count, seed, "paouris_moment", p) ** p
    moment = float(powers.mean())
    band = monte_carlo_half_width(powers.std(ddof=1), count)
    value = moment ** (1.0 / p)
    return MetricResult(value, value / (p * moment) * band, "monte-carlo",
                        f"{count} samples")


def check_paouris_tail(mu: LogConcaveDensity, R: float, constant: Optional[float] = None,
                       settings: NumericsSettings = DEFAULT_SETTINGS,
                       seed: Optional[int] = None) -> BoundCheck:
    """P[‖X‖ ≥ R] ≤ exp(−c·R); constant is the rate c."""
    require_isotropic(mu)
    tail = paouris_tail(mu, R, seed=seed, settings=settings)
    n = mu.dimension
    return make_check("paouris-tail", tail.value, R, settings, constant,
                      lhs_error=tail.abs_error,
                      inputs={"mu": mu.label, "n": n, "R": R,
                              "radius_multiplier": R / math.sqrt(n)})


def check_paouris_moment(mu: LogConcaveDensity, p: float, constant: Optional[float] = None,
                         settings: NumericsSettings = DEFAULT_SETTINGS,
                         seed: Optional[int] = None) -> BoundCheck:
    """(E‖X‖^p)^{1/p} ≤ C·max{√n, p}."""
    require_isotropic(mu)
    moment = paouris_moment(mu, p, seed=seed, settings=settings)
    n = mu.dimension
    return make_check("paouris-moment", moment.value, max(math.sqrt(n), p), settings, constant,
                      lhs_error=moment.abs_error,
                      inputs={"mu": mu.label, "n": n, "p": p})


# ═══════════════════════════════════════════════════════════════
# LOG-DENSITY VARIANCE
# ═══════════════════════════════════════════════════════════════

def _log_density_variance_1d(d: Density1D, settings: NumericsSettings) -> Tuple[float, float]:
    lo, hi = d.effective_support(settings.support_epsilon)
    probe = np.linspace(lo, hi, 257)[1:-1]
    if np.ptp(d.log_pdf(probe)) == 0:
        return 0.0, 0.0

    def log_f(x):
        value = float(d.log_pdf(x))
        return value if math.isfinite(value) else 0.0

    mean, mean_error = _integrate_1d(d, log_f, settings)
    variance, error = _integrate_1d(d, lambda x: (log_f(x) - mean) ** 2, settings)
    return max(variance, 0.0), error + 2.0 * abs(mean) * mean_error


def bobkov_madiman_variance(mu: LogConcaveDensity, sample_count: Optional[int] = None,
                            seed: Optional[int] = None,
                            settings: NumericsSettings = DEFAULT_SETTINGS) -> MetricResult:
    """
    Var(log f(Y)) for Y ~ μ.

    Exact in 1-D and additive over the factors of a product (the
    coordinates are independent); Monte Carlo otherwise. A density that
    is constant on its support gives exactly 0.
    """
    factors = mu.factors()
    if factors is not None:
        parts = [_log_density_variance_1d(f, settings) for f in factors]
        return MetricResult(sum(v for v, _ in parts), sum(e for _, e in parts), "quadrature",
                            f"sum over {len(parts)} coordinates")

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    rng = substream(seed, "bobkov_madiman_variance", mu.label)
    log_f = mu.log_pdf_points(mu.sample(count, rng))
    if np.ptp(log_f) == 0:
        return MetricResult(0.0, 0.0, "monte-carlo", "constant log-density")
    centered = (log_f - log_f.mean()) ** 2
    return MetricResult(float(np.var(log_f, ddof=1)),
                        monte_carlo_half_width(centered.std(ddof=1), count),
                        "monte-carlo", f"{count} samples")


def check_bobkov_madiman(mu: LogConcaveDensity, constant: Optional[float] = None,
                         settings: NumericsSettings = DEFAULT_SETTINGS,
                         seed: Optional[int] = None) -> BoundCheck:
    """Var(log f(Y)) ≤ C·n."""
    require_isotropic(mu)
    variance = bobkov_madiman_variance(mu, seed=seed, settings=settings)
    return make_check("bobkov-madiman", variance.value, mu.dimension, settings, constant,
                      lhs_error=variance.abs_error,
                      inputs={"mu": mu.label, "n": mu.dimension})


# ═══════════════════════════════════════════════════════════════
# ISOTROPIC CONSTANT AND MAXIMUM ENTROPY
# ═══════════════════════════════════════════════════════════════

def isotropic_constant(mu: LogConcaveDensity) -> float:
    """L_f = ‖f‖_∞^{1/n}."""
    return float(mu.max_density() ** (1.0 / mu.dimension))


def check_isotropic_constant(mu: LogConcaveDensity,
                             settings: NumericsSettings = DEFAULT_SETTINGS) -> BoundCheck:
    n = mu.dimension
    return make_check("isotropic-constant", isotropic_constant(mu), 2.0 ** 8 * math.sqrt(n),
                      settings, inputs={"mu": mu.label, "n": n})


def check_max_entropy(mu: LogConcaveDensity, settings: NumericsSettings = DEFAULT_SETTINGS,
                      seed: Optional[int] = None) -> BoundCheck:
    """Ent(μ) ≤ Ent(γₙ) = n·log√(2πe) for isotropic μ."""
    require_isotropic(mu)
    entropy = differential_entropy(mu, settings, seed=seed)
    n = mu.dimension
    return make_check("max-entropy", entropy.value, n * LOG_SQRT_2PI_E, settings,
                      lhs_error=entropy.abs_error, inputs={"mu": mu.label, "n": n})


# ═══════════════════════════════════════════════════════════════
# INTERMEDIATE STEPS
# ═══════════════════════════════════════════════════════════════

def check_smoothing_tradeoff(mu: LogConcaveDensity, nu: LogConcaveDensity,
                             smoothing_constant: float, t: Optional[float] = None,
                             settings: NumericsSettings = DEFAULT_SETTINGS,
                             panel: Optional[MetricPanel] = None) -> BoundCheck:
    """
    d_TV ≤ d_BL·max{1, 1/t} + 2·c·n·t.

    `smoothing_constant` is c from the deconvolution fit. Without an
    explicit t the balancing choice t = √(d_BL/(2n)) is used.
    """
    require_isotropic(mu, nu)
    panel = panel or MetricPanel(mu, nu, settings)
    n = panel.dimension
    tv, bl = panel.tv(), panel.bl()
    variant = "t=balanced" if t is None else f"t={t:g}"
    if t is None:
        t = math.sqrt(bl.value / (2.0 * n))
    elif not t > 0:
        raise ValueError(f"smoothing width t must be positive, got {t}")

    if t > 0:
        scale = max(1.0, 1.0 / t)
        unit_rhs = bl.value * scale + 2.0 * smoothing_constant * n * t
        rhs_error = bl.abs_error * scale
    else:
        unit_rhs, rhs_error = 0.0, 0.0
    return make_check("tv-bl-smoothing", tv.value, unit_rhs, settings,
                      lhs_error=tv.abs_error, unit_rhs_error=rhs_error, variant=variant,
                      inputs={"mu": mu.label, "nu": nu.label, "n": n, "t": t,
                              "smoothing_constant": smoothing_constant})


def norm_tail_mean(mu: LogConcaveDensity, R: float, sample_count: Optional[int] = None,
                   seed: Optional[int] = None,
                   settings: NumericsSettings = DEFAULT_SETTINGS) -> MetricResult:
    """E‖X‖·1{‖X‖ ≥ R}."""
    n = mu.dimension
    if is_standard_gaussian(mu):
        return MetricResult(chi_partial_mean(n, R), 0.0, "closed-form", f"chi({n}) partial mean")
    if isinstance(mu, Density1D):
        left, left_error = _integrate_1d(mu, abs, settings, upper=-R)
        right, right_error = _integrate_1d(mu, abs, settings, lower=R)
        return MetricResult(left + right, left_error + right_error + settings.support_epsilon,
                            "quadrature", "two-sided tail integral")

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    norms = _norm_samples(mu, count, seed, "norm_tail_mean", R)
    terms = np.where(norms >= R, norms, 0.0)
    return MetricResult(float(terms.mean()), monte_carlo_half_width(terms.std(ddof=1), count),
                        "monte-carlo", f"{count} samples")


def check_truncation_tradeoff(mu: LogConcaveDensity, nu: LogConcaveDensity, R: float,
                              tail_rate: Optional[float] = None,
                              settings: NumericsSettings = DEFAULT_SETTINGS,
                              panel: Optional[MetricPanel] = None) -> BoundCheck:
    """
    W₁ ≤ max{1, R}·d_BL + E‖X‖1{‖X‖≥R} + E‖Y‖1{‖Y‖≥R}.

    This step holds for every pair, so in n-D d_BL enters through the
    upper end of its sandwich. With `tail_rate` (the fitted Paouris
    rate c) the form max{1,R}·d_BL + 2√n·e^{−cR} is recorded too.
    """
    if not R > 0:
        raise ValueError(f"truncation radius must be positive, got {R}")
    panel = panel or MetricPanel(mu, nu, settings)
    n = panel.dimension
    w1 = panel.wasserstein(1.0)
    bl = panel.bl_bounds()[1]
    tails = [norm_tail_mean(d, R, seed=panel.seed, settings=settings) for d in (mu, nu)]
    scale = max(1.0, R)
    unit_rhs = scale * bl.value + sum(tail.value for tail in tails)
    inputs = {"mu": mu.label, "nu": nu.label, "n": n, "R": R,
              "radius_multiplier": R / math.sqrt(n)}
    if tail_rate is not None:
        inputs["tail_rate"] = tail_rate
        inputs["paouris_form"] = scale * bl.value + 2.0 * math.sqrt(n) * math.exp(-tail_rate * R)
    return make_check("w1-truncation", w1.value, unit_rhs, settings,
                      lhs_error=w1.abs_error,
                      unit_rhs_error=scale * bl.abs_error + sum(t.abs_error for t in tails),
                      variant=f"R={R / math.sqrt(n):g}sqrt(n)", inputs=inputs)


# ═══════════════════════════════════════════════════════════════
# DIAGNOSTICS
# ═══════════════════════════════════════════════════════════════

def gaussian_reweighting_identities(mu: LogConcaveDensity, sample_count: Optional[int] = None,
                                    seed: Optional[int] = None,
                                    settings: NumericsSettings = DEFAULT_SETTINGS
                                    ) -> Dict[str, MetricResult]:
    """
    d_TV(μ,γₙ) = E|X − 1| and H(μ|γₙ) = E[X·log X] with X = f(Z)/φ(Z),
    Z ~ γₙ, both by Monte Carlo.

    For heavy-tailed μ (Laplace) E[X²] is infinite and the bands are
    not trustworthy; the uniform and interpolated members are fine.
    """
    gaussian = make_standard_gaussian(mu.dimension)
    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    rng = substream(seed, "gaussian_reweighting", mu.label)
    z = gaussian.sample(count, rng)
    log_ratio = mu.log_pdf_points(z) - gaussian.log_pdf_points(z)
    ratio = np.exp(log_ratio)
    tv_terms = np.abs(ratio - 1.0)
    kl_terms = np.where(ratio > 0, ratio * np.where(ratio > 0, log_ratio, 0.0), 0.0)
    return {
        "tv": MetricResult(float(tv_terms.mean()),
                           monte_carlo_half_width(tv_terms.std(ddof=1), count),
                           "monte-carlo", "E|f/phi - 1| under the Gaussian"),
        "kl": MetricResult(max(float(kl_terms.mean()), 0.0),
                           monte_carlo_half_width(kl_terms.std(ddof=1), count),
                           "monte-carlo", "E[(f/phi) log(f/phi)] under the Gaussian"),
    }


def isotropy_counterexample(scales: Sequence[float] = (1.0, 0.5, 0.25, 0.1, 0.05),
                            settings: NumericsSettings = DEFAULT_SETTINGS) -> List[Dict[str, float]]:
    """
    (N(0, s²), N(0, 4s²)) for shrinking s: d_TV does not depend on s
    while d_BL → 0, so d_TV/√d_BL is unbounded without isotropy.
    """
    rows = []
    for s in scales:
        if not s > 0:
            raise ValueError(f"scale must be positive, got {s}")
        mu, nu = Gaussian1D(0.0, s, label=f"N(0,{s:g}^2)"), Gaussian1D(0.0, 2.0 * s)
        tv = tv_distance_1d(mu, nu, settings).value
        bl = bl_distance_1d(mu, nu, settings=settings).value
        rows.append({"scale": float(s), "d_tv": tv, "d_bl": bl,
                     "ratio": tv / math.sqrt(bl) if bl > 0 else math.inf})
        logger.debug("counterexample s=%g: d_TV=%.6g d_BL=%.6g", s, tv, bl)
    return rows


def moment_convergence(base: LogConcaveDensity, t_values: Sequence[float],
                       settings: NumericsSettings = DEFAULT_SETTINGS) -> List[Dict[str, float]]:
    """
    E|X₁|² and E|X₁|⁴ of the first coordinate of μ_t along the
    interpolation toward γₙ; the Gaussian values are 1 and 3.
    """
    rows = []
    for t in t_values:
        law = convolve_interpolate(base, t, settings.convolution_nodes)
        first = law if isinstance(law, Density1D) else law.factors()[0]
        second, _ = absolute_moment_1d(first, 2.0, settings)
        fourth, error = absolute_moment_1d(first, 4.0, settings)
        rows.append({"t": float(t), "m2": second, "m4": fourth, "m4_error": error})
    return rows
