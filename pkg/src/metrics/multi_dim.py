"""
MULTI-DIMENSIONAL METRICS
=========================

PURPOSE:
--------
Distances between n-D densities, where only some are computable exactly:

  • tv_distance_nd           Monte Carlo under the mixture ½(μ + ν)
  • wasserstein_p_nd_upper   product coupling of 1-D quantile couplings
  • bl_distance_nd_bounds    the d_BL sandwich [lower, upper]

ESTIMATORS:
-----------
  • d_TV: with m = ½(f + g), |f − g|/m = 2|tanh((log f − log g)/2)|.
    Half the samples come from μ and half from ν (stratified mixture),
    so the integrand is bounded by 2 and the variance stays small.
  • W_p: for products, W₂² is additive over coordinates, so p = 2 is
    exact; other p get a Monte-Carlo estimate of the coordinatewise
    quantile coupling, which is an upper bound.
  • d_BL lower: each coordinate-marginal d_BL (exact 1-D LP), and radial
    test functions clip(r − ‖x‖, −1, 1) by Monte Carlo minus their band.
  • d_BL upper: min(d_TV + band, W₁-upper + band).

Every Monte-Carlo call draws from substream(seed, operation, labels).
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from ..distributions.density import LogConcaveDensity, open_unit_uniform
from ..utils.random_streams import substream
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .one_dim import bl_distance_1d, wasserstein_p_1d
from .result import Z_95, MetricResult, monte_carlo_half_width

logger = logging.getLogger(__name__)

# Radii of the radial d_BL test functions, in units of √n
RADIAL_MULTIPLIERS = (0.5, 0.75, 1.0, 1.25, 1.5)


def _check_pair(mu: LogConcaveDensity, nu: LogConcaveDensity) -> int:
    if mu.dimension != nu.dimension:
        raise ValueError(f"dimension mismatch: {mu.dimension} vs {nu.dimension}")
    return mu.dimension


def _product_pair(mu: LogConcaveDensity, nu: LogConcaveDensity):
    mu_factors, nu_factors = mu.factors(), nu.factors()
    if mu_factors is None or nu_factors is None:
        raise ValueError(
            f"unsupported structure for a product computation: {mu.structure}, {nu.structure}"
        )
    return list(zip(mu_factors, nu_factors))


# ═══════════════════════════════════════════════════════════════
# TOTAL VARIATION
# ═══════════════════════════════════════════════════════════════

def tv_distance_nd(
    mu: LogConcaveDensity,
    nu: LogConcaveDensity,
    sample_count: Optional[int] = None,
    seed: Optional[int] = None,
    settings: NumericsSettings = DEFAULT_SETTINGS,
) -> MetricResult:
    """Monte-Carlo ∫|f_μ − f_ν| with a 95% half-width."""
    n = _check_pair(mu, nu)
    if n < 2:
        raise ValueError("tv_distance_nd needs n >= 2; use tv_distance_1d in one dimension")
    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    rng = substream(seed, "tv_distance_nd", mu.label, nu.label)
    half = max(count // 2, 2)

    estimates, variances = [], []
    for source in (mu, nu):
        points = source.sample(half, rng)
        log_gap = mu.log_pdf_points(points) - nu.log_pdf_points(points)
        with np.errstate(invalid="ignore"):
            terms = 2.0 * np.abs(np.tanh(0.5 * log_gap))
        terms = np.where(np.isnan(terms), 0.0, terms)
        estimates.append(float(np.mean(terms)))
        variances.append(float(np.var(terms, ddof=1)))

    value = 0.5 * (estimates[0] + estimates[1])
    band = Z_95 * np.sqrt(0.25 * (variances[0] + variances[1]) / half)
    return MetricResult(
        value=float(np.clip(value, 0.0, 2.0)),
        abs_error=float(band),
        method="monte-carlo",
        detail=f"{2 * half} samples, mixture proposal",
    )


# ═══════════════════════════════════════════════════════════════
# WASSERSTEIN
# ═══════════════════════════════════════════════════════════════

def wasserstein_p_nd_upper(
    mu: LogConcaveDensity,
    nu: LogConcaveDensity,
    p: float = 2.0,
    sample_count: Optional[int] = None,
    seed: Optional[int] = None,
    settings: NumericsSettings = DEFAULT_SETTINGS,
) -> MetricResult:
    """
    W_p for product pairs: exact at p = 2, an upper bound otherwise.

    Raises:
        ValueError: p < 1, or either density is not a product
    """
    _check_pair(mu, nu)
    p = float(p)
    if p < 1:
        raise ValueError(f"Wasserstein order p must be >= 1, got {p}")
    pairs = _product_pair(mu, nu)

    if p == 2.0:
        parts = [wasserstein_p_1d(a, b, 2.0, settings) for a, b in pairs]
        squared = sum(part.value ** 2 for part in parts)
        value = float(np.sqrt(squared))
        error = sum(2.0 * part.value * part.abs_error for part in parts)
        return MetricResult(
            value=value,
            abs_error=error / (2.0 * value) if value > 0 else 0.0,
            method="quantile-quadrature",
            detail=f"squared W2 additive over {len(parts)} coordinates",
        )

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    rng = substream(seed, "wasserstein_p_nd_upper", mu.label, nu.label, p)
    levels = open_unit_uniform(rng, (count, len(pairs)))
    gaps = np.column_stack([
        np.asarray(a.quantile(levels[:, i])) - np.asarray(b.quantile(levels[:, i]))
        for i, (a, b) in enumerate(pairs)
    ])
    powers = np.linalg.norm(gaps, axis=1) ** p
    mean_power = float(np.mean(powers))
    band = monte_carlo_half_width(np.std(powers, ddof=1), count)
    value = mean_power ** (1.0 / p)
    error = value / (p * mean_power) * band if mean_power > 0 else 0.0
    return MetricResult(
        value=value,
        abs_error=error,
        method="monte-carlo",
        detail=f"product quantile coupling, upper bound, {count} samples",
        kind="upper",
    )


# ═══════════════════════════════════════════════════════════════
# BOUNDED-LIPSCHITZ SANDWICH
# ═══════════════════════════════════════════════════════════════

def _radial_lower(mu, nu, count, rng, multipliers: Sequence[float]) -> Tuple[float, float]:
    n = mu.dimension
    radii = np.sqrt(n) * np.asarray(multipliers, dtype=float)
    norms_mu = np.linalg.norm(mu.sample(count, rng), axis=1)
    norms_nu = np.linalg.norm(nu.sample(count, rng), axis=1)

    best, best_band = 0.0, 0.0
    for r in radii:
        g_mu = np.clip(r - norms_mu, -1.0, 1.0)
        g_nu = np.clip(r - norms_nu, -1.0, 1.0)
        gap = abs(float(np.mean(g_mu) - np.mean(g_nu)))
        band = Z_95 * np.sqrt((np.var(g_mu, ddof=1) + np.var(g_nu, ddof=1)) / count)
        if gap - band > best - best_band:
            best, best_band = gap, float(band)
    return best, best_band


def bl_distance_nd_bounds(
    mu: LogConcaveDensity,
    nu: LogConcaveDensity,
    sample_count: Optional[int] = None,
    seed: Optional[int] = None,
    settings: NumericsSettings = DEFAULT_SETTINGS,
    tv: Optional[MetricResult] = None,
    w1_upper: Optional[MetricResult] = None,
) -> Tuple[MetricResult, MetricResult]:
    """
    (lower, upper) bounds on d_BL in n-D.

    `tv` and `w1_upper` are reused when the caller already has them.
    """
    _check_pair(mu, nu)
    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed

    candidates = []
    factors = (mu.factors(), nu.factors())
    if factors[0] is not None and factors[1] is not None:
        for i, (a, b) in enumerate(zip(*factors)):
            marginal = bl_distance_1d(a, b, settings=settings)
            candidates.append((max(marginal.value - marginal.abs_error, 0.0),
                               marginal.abs_error, f"coordinate {i} LP"))

    rng = substream(seed, "bl_distance_nd_bounds", mu.label, nu.label)
    radial, radial_band = _radial_lower(mu, nu, count, rng, RADIAL_MULTIPLIERS)
    candidates.append((max(radial - radial_band, 0.0), radial_band, "radial test functions"))

    lower_value, lower_error, lower_source = max(candidates, key=lambda c: c[0])
    lower = MetricResult(
        value=lower_value,
        abs_error=lower_error,
        method="grid-LP" if "LP" in lower_source else "monte-carlo",
        detail=f"lower bound from {lower_source}",
        kind="lower",
    )

    if tv is None:
        tv = tv_distance_nd(mu, nu, count, seed, settings)
    caps = [(tv.value + tv.abs_error, "d_TV")]
    try:
        if w1_upper is None:
            w1_upper = wasserstein_p_nd_upper(mu, nu, 1.0, count, seed, settings)
        caps.append((w1_upper.value + w1_upper.abs_error, "W1 upper"))
    except ValueError:
        logger.debug("no W1 cap for %s vs %s (non-product structure)", mu.label, nu.label)
    upper_value, upper_source = min(caps, key=lambda c: c[0])
    upper = MetricResult(
        value=max(upper_value, lower_value),
        abs_error=0.0,
        method="monte-carlo",
        detail=f"upper bound from {upper_source}",
        kind="upper",
    )
    return lower, upper
