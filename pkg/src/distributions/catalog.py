"""
DISTRIBUTION CATALOG
====================

PURPOSE:
--------
Constructors for the isotropic test distributions, the convolution
interpolation toward the standard Gaussian, whitening, and the fixed
suites every acceptance check runs over.

RESPONSIBILITIES:
-----------------
  1. make_standard_gaussian / make_isotropic_uniform / make_isotropic_laplace
  2. convolve_interpolate(base, t): law of √(1−t²)·Z + t·Y
  3. whiten(raw, mean, covariance): affine map to mean 0, covariance I
  4. cdf_1d / quantile_1d / sample: dimension-checked entry points
  5. density_from_spec: structured config record → density
  6. catalog_1d / catalog_nd: the fixed suites

EXAMPLE:
--------
    >>> base = make_isotropic_uniform(1)
    >>> mu = convolve_interpolate(base, 0.5)
    >>> mu.variance()
    1.0
"""

import logging
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..utils.random_streams import SeedLike
from .density import Density1D, LogConcaveDensity
from .families import (
    Convolution1D,
    GaussianDensity,
    Gaussian1D,
    Laplace1D,
    ProductDensity,
    Uniform1D,
    WhitenedDensity,
    affine_density,
    check_spd,
)

logger = logging.getLogger(__name__)

SQRT3 = np.sqrt(3.0)
SQRT2 = np.sqrt(2.0)

FAMILIES = ("gaussian", "uniform", "laplace")

# Interpolation parameters of the standard suite
CATALOG_T_VALUES = (0.8, 0.4, 0.2)

DEFAULT_GRID_NODES = 16384


def _check_dimension(n) -> int:
    if isinstance(n, bool) or int(n) != n or int(n) < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    return int(n)


# ═══════════════════════════════════════════════════════════════
# ISOTROPIC CONSTRUCTORS
# ═══════════════════════════════════════════════════════════════

def make_standard_gaussian(n: int) -> LogConcaveDensity:
    """γₙ; a Gaussian1D for n = 1."""
    n = _check_dimension(n)
    if n == 1:
        return Gaussian1D(0.0, 1.0, label="gaussian")
    return GaussianDensity(np.zeros(n), np.eye(n), label=f"gaussian{n}")


def make_isotropic_uniform(n: int) -> LogConcaveDensity:
    """Product of n copies of Uniform[−√3, √3]."""
    n = _check_dimension(n)
    if n == 1:
        return Uniform1D(0.0, SQRT3, label="uniform")
    return ProductDensity([Uniform1D(0.0, SQRT3, label="uniform") for _ in range(n)],
                          label=f"uniform{n}")


def make_isotropic_laplace(n: int) -> LogConcaveDensity:
    """Product of n copies of (1/√2)·exp(−√2·|x|)."""
    n = _check_dimension(n)
    if n == 1:
        return Laplace1D(0.0, SQRT2, label="laplace")
    return ProductDensity([Laplace1D(0.0, SQRT2, label="laplace") for _ in range(n)],
                          label=f"laplace{n}")


def make_mixed_uniform_laplace() -> Density1D:
    """(U + L)/√2 for isotropic uniform U and Laplace L; takes the grid path."""
    return Convolution1D(
        [make_isotropic_uniform(1), make_isotropic_laplace(1)],
        [1.0 / SQRT2, 1.0 / SQRT2],
        label="uniform+laplace",
    )


# ═══════════════════════════════════════════════════════════════
# TRANSFORMS
# ═══════════════════════════════════════════════════════════════

def convolve_interpolate(
    base: LogConcaveDensity, t: float, grid_nodes: int = DEFAULT_GRID_NODES
) -> LogConcaveDensity:
    """
    Law of √(1−t²)·Z + t·Y with Z ~ γₙ and Y ~ base independent.

    t = 0 returns γₙ and t = 1 returns `base` itself. Product bases are
    interpolated coordinate by coordinate (γₙ is a product too), so the
    result stays a product and keeps exact per-coordinate CDFs.
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter t must lie in [0, 1], got {t}")
    n = base.dimension
    if t == 0.0:
        return make_standard_gaussian(n)
    if t == 1.0:
        return base

    weight = np.sqrt(1.0 - t * t)
    label = f"{base.label}@t={t:g}"
    if isinstance(base, Density1D):
        return Convolution1D([Gaussian1D(), base], [weight, t], grid_nodes, label=label)

    factors = base.factors()
    if factors is None:
        raise ValueError(
            f"convolve_interpolate supports 1-D and product bases, got {base.structure}"
        )
    coordinates = [
        Convolution1D([Gaussian1D(), f], [weight, t], grid_nodes,
                      label=f"{f.label}@t={t:g}")
        for f in factors
    ]
    return ProductDensity(coordinates, label=label)


def whiten(raw: LogConcaveDensity, mean, covariance) -> LogConcaveDensity:
    """
    Pushforward of `raw` under x ↦ covariance^{-1/2}(x − mean).

    The log-density picks up +½·log det(covariance). Closed families come
    back as the same family with new parameters; products with a diagonal
    covariance are whitened coordinate by coordinate.

    Raises:
        ValueError: covariance is not symmetric positive definite
    """
    n = raw.dimension
    mean = np.atleast_1d(np.asarray(mean, dtype=float))
    cov = np.atleast_2d(np.asarray(covariance, dtype=float))
    if mean.shape != (n,):
        raise ValueError(f"mean must have length {n}, got shape {mean.shape}")
    check_spd(cov, n)

    if np.all(mean == 0.0) and np.array_equal(cov, np.eye(n)):
        return raw

    if isinstance(raw, Density1D):
        sd = float(np.sqrt(cov[0, 0]))
        return affine_density(raw, -mean[0] / sd, 1.0 / sd)

    diagonal = np.array_equal(cov, np.diag(np.diag(cov)))
    if isinstance(raw, GaussianDensity):
        eigenvalues, vectors = np.linalg.eigh(cov)
        inverse_root = (vectors / np.sqrt(eigenvalues)) @ vectors.T
        return GaussianDensity(
            inverse_root @ (raw.mean_vector() - mean),
            inverse_root @ raw.covariance_matrix() @ inverse_root.T,
            label=raw.label,
        )
    factors = raw.factors()
    if factors is not None and diagonal:
        return ProductDensity(
            [whiten(f, [m], [[v]]) for f, m, v in zip(factors, mean, np.diag(cov))],
            label=raw.label,
        )
    return WhitenedDensity(raw, mean, cov, label=raw.label)


# ═══════════════════════════════════════════════════════════════
# DIMENSION-CHECKED ENTRY POINTS
# ═══════════════════════════════════════════════════════════════

def _require_1d(d: LogConcaveDensity) -> Density1D:
    if d.dimension != 1 or not isinstance(d, Density1D):
        raise ValueError(f"expected a one-dimensional density, got dimension {d.dimension}")
    return d


def cdf_1d(d: LogConcaveDensity, x):
    """P[X <= x] for a 1-D density."""
    return _require_1d(d).cdf(x)


def quantile_1d(d: LogConcaveDensity, u):
    """Inverse CDF of a 1-D density; u must lie in (0, 1)."""
    return _require_1d(d).quantile(u)


def sample(d: LogConcaveDensity, count: int, seed: SeedLike) -> np.ndarray:
    """`count` i.i.d. points as a (count, n) array, deterministic in `seed`."""
    return d.sample(count, seed)


# ═══════════════════════════════════════════════════════════════
# STRUCTURED SPECS
# ═══════════════════════════════════════════════════════════════

def _per_coordinate(value, n: int, name: str) -> np.ndarray:
    array = np.atleast_1d(np.asarray(value, dtype=float))
    if array.size == 1:
        return np.full(n, float(array[0]))
    if array.size != n:
        raise ValueError(f"parameter {name!r} needs 1 or {n} values, got {array.size}")
    return array


def density_from_spec(spec: Dict[str, Any], grid_nodes: int = DEFAULT_GRID_NODES
                      ) -> LogConcaveDensity:
    """
    Build a density from a config record {family, n, params}.

    Without params the isotropic member of the family is returned. With
    raw params the raw law is built and whitened with its analytic
    moments:
      gaussian: mean, variance (per coordinate)
      uniform:  low, high
      laplace:  center, rate

    Example:
        >>> density_from_spec({"family": "uniform", "n": 1,
        ...                    "params": {"low": 0.0, "high": 6.928203230275509}})
    """
    family = str(spec.get("family", "")).lower()
    if family not in FAMILIES:
        raise ValueError(f"Unknown family {spec.get('family')!r}; expected one of {FAMILIES}")
    n = _check_dimension(spec.get("n", 1))
    params = spec.get("params") or {}

    if not params:
        isotropic = {
            "gaussian": make_standard_gaussian,
            "uniform": make_isotropic_uniform,
            "laplace": make_isotropic_laplace,
        }[family]
        return isotropic(n)

    if family == "gaussian":
        means = _per_coordinate(params.get("mean", 0.0), n, "mean")
        variances = _per_coordinate(params.get("variance", 1.0), n, "variance")
        raw = [Gaussian1D(m, np.sqrt(v)) for m, v in zip(means, variances)]
    elif family == "uniform":
        lows = _per_coordinate(params.get("low", -SQRT3), n, "low")
        highs = _per_coordinate(params.get("high", SQRT3), n, "high")
        raw = [Uniform1D(0.5 * (lo + hi), 0.5 * (hi - lo)) for lo, hi in zip(lows, highs)]
    else:
        centers = _per_coordinate(params.get("center", 0.0), n, "center")
        rates = _per_coordinate(params.get("rate", SQRT2), n, "rate")
        raw = [Laplace1D(c, r) for c, r in zip(centers, rates)]

    whitened = [whiten(d, [d.mean()], [[d.variance()]]) for d in raw]
    logger.debug("built whitened %s from raw params %s", family, params)
    if n == 1:
        return whitened[0]
    return ProductDensity(whitened, label=f"{family}{n}")


# ═══════════════════════════════════════════════════════════════
# FIXED SUITES
# ═══════════════════════════════════════════════════════════════

def catalog_1d(grid_nodes: int = DEFAULT_GRID_NODES) -> List[Tuple[str, Density1D]]:
    """
    The standard 1-D suite: γ₁, uniform, Laplace and their interpolations
    toward γ₁ at t ∈ {0.8, 0.4, 0.2}. Every member has closed-form CDFs.
    """
    uniform = make_isotropic_uniform(1)
    laplace = make_isotropic_laplace(1)
    members: List[Tuple[str, Density1D]] = [
        ("gaussian", make_standard_gaussian(1)),
        ("uniform", uniform),
        ("laplace", laplace),
    ]
    for base_name, base in (("uniform", uniform), ("laplace", laplace)):
        for t in CATALOG_T_VALUES:
            members.append((f"{base_name}@t={t:g}", convolve_interpolate(base, t, grid_nodes)))
    return members


def catalog_pairs_1d(grid_nodes: int = DEFAULT_GRID_NODES
                     ) -> List[Tuple[str, Density1D, Density1D]]:
    """All unordered pairs of distinct catalog_1d members."""
    members = catalog_1d(grid_nodes)
    pairs = []
    for i, (name_a, a) in enumerate(members):
        for name_b, b in members[i + 1:]:
            pairs.append((f"{name_a}|{name_b}", a, b))
    return pairs


def catalog_nd(n: int, t_values: Sequence[float] = (0.4,),
               grid_nodes: int = DEFAULT_GRID_NODES) -> List[Tuple[str, LogConcaveDensity]]:
    """The n-D suite: γₙ, uniform and Laplace products and their interpolations."""
    n = _check_dimension(n)
    uniform = make_isotropic_uniform(n)
    laplace = make_isotropic_laplace(n)
    members: List[Tuple[str, LogConcaveDensity]] = [
        (f"gaussian{n}", make_standard_gaussian(n)),
        (f"uniform{n}", uniform),
        (f"laplace{n}", laplace),
    ]
    for base_name, base in ((f"uniform{n}", uniform), (f"laplace{n}", laplace)):
        for t in t_values:
            members.append((f"{base_name}@t={t:g}", convolve_interpolate(base, t, grid_nodes)))
    return members
