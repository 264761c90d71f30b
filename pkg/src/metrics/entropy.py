"""
ENTROPY AND RELATIVE ENTROPY
============================

  • relative_entropy(μ, ν)     H(μ|ν) = ∫ f_μ log(f_μ/f_ν)
  • differential_entropy(μ)    −∫ f log f

Both are exact by quadrature in 1-D, additive over the factors of
product densities, and Monte-Carlo otherwise. A support violation gives
`MetricResult.infinite(...)`, never an exception.
"""

import logging
from typing import List, Optional

import numpy as np

from ..distributions.density import Density1D, LogConcaveDensity
from ..utils.random_streams import substream
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .one_dim import quad
from .result import MetricResult, monte_carlo_half_width

logger = logging.getLogger(__name__)

# Slack allowed when comparing support endpoints
SUPPORT_ATOL = 1e-12


def _support_contained(mu: LogConcaveDensity, nu: LogConcaveDensity) -> bool:
    inner, outer = mu.support_box(), nu.support_box()
    return bool(np.all(inner[:, 0] >= outer[:, 0] - SUPPORT_ATOL)
                and np.all(inner[:, 1] <= outer[:, 1] + SUPPORT_ATOL))


def _pieces(d: Density1D, extra: List[float], settings: NumericsSettings) -> List[float]:
    lo, hi = d.effective_support(settings.support_epsilon)
    inside = sorted({float(x) for x in extra if lo < x < hi})
    return [lo] + inside + [hi]


def _product_factors(mu: LogConcaveDensity, nu: LogConcaveDensity):
    if mu.dimension < 2 or mu.dimension != nu.dimension:
        return None
    mu_factors, nu_factors = mu.factors(), nu.factors()
    if mu_factors is None or nu_factors is None:
        return None
    return list(zip(mu_factors, nu_factors))


def relative_entropy(
    mu: LogConcaveDensity,
    nu: LogConcaveDensity,
    settings: NumericsSettings = DEFAULT_SETTINGS,
    sample_count: Optional[int] = None,
    seed: Optional[int] = None,
) -> MetricResult:
    """
    H(μ | ν).

    Example:
        >>> relative_entropy(Gaussian1D(0, 2), Gaussian1D(0, 1)).value
        0.8068...
    """
    if mu.dimension != nu.dimension:
        raise ValueError(f"dimension mismatch: {mu.dimension} vs {nu.dimension}")
    if not _support_contained(mu, nu):
        return MetricResult.infinite(f"support of {mu.label} not inside support of {nu.label}")

    if isinstance(mu, Density1D) and isinstance(nu, Density1D):
        return _relative_entropy_1d(mu, nu, settings)

    pairs = _product_factors(mu, nu)
    if pairs is not None:
        parts = [_relative_entropy_1d(a, b, settings) for a, b in pairs]
        if any(part.is_infinite for part in parts):
            return MetricResult.infinite("infinite coordinate divergence")
        return MetricResult(
            value=sum(part.value for part in parts),
            abs_error=sum(part.abs_error for part in parts),
            method="quadrature",
            detail=f"sum over {len(parts)} coordinates",
        )

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    rng = substream(seed, "relative_entropy", mu.label, nu.label)
    points = mu.sample(count, rng)
    log_ratio = mu.log_pdf_points(points) - nu.log_pdf_points(points)
    if not np.all(np.isfinite(log_ratio)):
        return MetricResult.infinite("sample of mu outside support of nu", method="monte-carlo")
    return MetricResult(
        value=max(float(np.mean(log_ratio)), 0.0),
        abs_error=monte_carlo_half_width(np.std(log_ratio, ddof=1), count),
        method="monte-carlo",
        detail=f"{count} samples",
    )


def _relative_entropy_1d(mu: Density1D, nu: Density1D,
                         settings: NumericsSettings) -> MetricResult:
    if not _support_contained(mu, nu):
        return MetricResult.infinite(f"support of {mu.label} not inside support of {nu.label}")

    def integrand(x):
        log_f = float(mu.log_pdf(x))
        if not np.isfinite(log_f):
            return 0.0
        return np.exp(log_f) * (log_f - float(nu.log_pdf(x)))

    points = _pieces(mu, mu.breakpoints() + nu.breakpoints(), settings)
    total, error = 0.0, 0.0
    for left, right in zip(points[:-1], points[1:]):
        value, piece_error = quad(integrand, left, right, settings)
        total += value
        error += piece_error

    return MetricResult(
        value=max(total, 0.0),
        abs_error=error + 2.0 * settings.support_epsilon,
        method="quadrature",
        detail=f"{len(points) - 1} pieces",
    )


def differential_entropy(
    mu: LogConcaveDensity,
    settings: NumericsSettings = DEFAULT_SETTINGS,
    sample_count: Optional[int] = None,
    seed: Optional[int] = None,
) -> MetricResult:
    """
    −∫ f log f.

    A negative entropy cannot be stored in a MetricResult and raises
    ValueError; the isotropic catalog densities all have positive entropy.
    """
    if isinstance(mu, Density1D):
        value, error = _entropy_1d(mu, settings)
        return MetricResult(value, error, "quadrature", "integral of -f log f")

    factors = mu.factors()
    if factors is not None:
        parts = [_entropy_1d(f, settings) for f in factors]
        return MetricResult(
            value=sum(v for v, _ in parts),
            abs_error=sum(e for _, e in parts),
            method="quadrature",
            detail=f"sum over {len(parts)} coordinates",
        )

    count = int(sample_count or settings.mc_samples)
    seed = settings.seed if seed is None else seed
    rng = substream(seed, "differential_entropy", mu.label)
    log_f = mu.log_pdf_points(mu.sample(count, rng))
    return MetricResult(
        value=-float(np.mean(log_f)),
        abs_error=monte_carlo_half_width(np.std(log_f, ddof=1), count),
        method="monte-carlo",
        detail=f"{count} samples",
    )


def _entropy_1d(mu: Density1D, settings: NumericsSettings):
    def integrand(x):
        log_f = float(mu.log_pdf(x))
        if not np.isfinite(log_f):
            return 0.0
        return -np.exp(log_f) * log_f

    points = _pieces(mu, mu.breakpoints(), settings)
    total, error = 0.0, 0.0
    for left, right in zip(points[:-1], points[1:]):
        value, piece_error = quad(integrand, left, right, settings)
        total += value
        error += piece_error
    return total, error + 2.0 * settings.support_epsilon
