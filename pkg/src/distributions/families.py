"""
DISTRIBUTION FAMILIES
=====================

PURPOSE:
--------
Concrete log-concave families with closed-form densities, CDFs and
quantiles wherever they exist:

  • Gaussian1D          N(mean, sd²)                     (scipy.stats.norm)
  • Uniform1D           Uniform[center − hw, center + hw]
  • Laplace1D           (rate/2)·exp(−rate·|x − center|) (scipy.stats.laplace)
  • GaussianDensity     N(mean, cov) on R^n
  • ProductDensity      independent 1-D coordinates
  • Convolution1D       law of Σ wᵢ·Yᵢ for independent 1-D Yᵢ
  • WhitenedDensity1D / WhitenedDensity
                        affine pushforward x ↦ cov^{-1/2}(x − mean)

CONVOLUTIONS:
-------------
Gaussian components of a convolution are merged into one N(m, S²). What
remains decides how the density is evaluated:

  • nothing left          → the merged Gaussian
  • one uniform           → closed form via Φ and its antiderivative
  • one Laplace           → closed form via erfc / erfcx
  • anything else         → cell-averaged densities convolved with FFT
                            on a uniform grid (GridDensity1D)

The closed forms keep variance 1 ± 1e-8 reachable by quadrature; the grid
path is accurate to O(h²) in L¹.

DEBUGGING TIPS:
---------------
  • Whitening a catalog family returns the same family with new
    parameters, so whiten(N(3, 4)) *is* N(0, 1), not a wrapper around it
  • Convolution1D.law tells you which evaluation path was picked
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg, special, stats

from .density import (
    Density1D,
    LogConcaveDensity,
    bracketed_inverse,
    check_open_unit,
    open_unit_uniform,
)
from .grid import GridFunction, convolve_on_grid, uniform_grid

LOG_2PI = np.log(2.0 * np.pi)
SQRT2 = np.sqrt(2.0)


def _out(value):
    """Numpy scalar for 0-d results, array otherwise."""
    return np.asarray(value)[()]


# ═══════════════════════════════════════════════════════════════
# ONE-DIMENSIONAL FAMILIES
# ═══════════════════════════════════════════════════════════════

class Gaussian1D(Density1D):
    """N(mean, sd²)."""

    structure = "gaussian"

    def __init__(self, mean: float = 0.0, sd: float = 1.0, label: str = ""):
        if not sd > 0:
            raise ValueError(f"Gaussian standard deviation must be positive, got {sd}")
        self.loc = float(mean)
        self.sd = float(sd)
        self._dist = stats.norm(loc=self.loc, scale=self.sd)
        super().__init__(label or "gaussian")

    def log_pdf(self, x):
        return _out(self._dist.logpdf(x))

    def cdf(self, x):
        return _out(self._dist.cdf(x))

    def sf(self, x):
        return _out(self._dist.sf(x))

    def quantile(self, u):
        u = check_open_unit(u)
        return _out(self._dist.ppf(u))

    def isf(self, v):
        v = check_open_unit(v, "survival")
        return _out(self._dist.isf(v))

    def support_interval(self) -> Tuple[float, float]:
        return (-np.inf, np.inf)

    def mean(self) -> float:
        return self.loc

    def variance(self) -> float:
        return self.sd ** 2

    def max_density(self) -> float:
        return float(1.0 / (self.sd * np.sqrt(2.0 * np.pi)))

    @property
    def symmetry_center(self) -> Optional[float]:
        return self.loc

    def _draw_values(self, rng, count):
        return self.loc + self.sd * rng.standard_normal(count)


class Uniform1D(Density1D):
    """Uniform on [center − half_width, center + half_width]."""

    structure = "uniform"

    def __init__(self, center: float = 0.0, half_width: float = np.sqrt(3.0), label: str = ""):
        if not half_width > 0:
            raise ValueError(f"uniform half-width must be positive, got {half_width}")
        self.center = float(center)
        self.half_width = float(half_width)
        self.lo = self.center - self.half_width
        self.hi = self.center + self.half_width
        super().__init__(label or "uniform")

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.lo) & (x <= self.hi)
        return _out(np.where(inside, -np.log(2.0 * self.half_width), -np.inf))

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.clip((x - self.lo) / (2.0 * self.half_width), 0.0, 1.0))

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.clip((self.hi - x) / (2.0 * self.half_width), 0.0, 1.0))

    def quantile(self, u):
        u = check_open_unit(u)
        return _out(self.lo + 2.0 * self.half_width * u)

    def isf(self, v):
        v = check_open_unit(v, "survival")
        return _out(self.hi - 2.0 * self.half_width * v)

    def breakpoints(self) -> List[float]:
        return [self.lo, self.hi]

    def support_interval(self) -> Tuple[float, float]:
        return (self.lo, self.hi)

    def mean(self) -> float:
        return self.center

    def variance(self) -> float:
        return self.half_width ** 2 / 3.0

    def max_density(self) -> float:
        return 1.0 / (2.0 * self.half_width)

    @property
    def symmetry_center(self) -> Optional[float]:
        return self.center

    def _draw_values(self, rng, count):
        return self.quantile(open_unit_uniform(rng, count))


class Laplace1D(Density1D):
    """Two-sided exponential (rate/2)·exp(−rate·|x − center|)."""

    structure = "laplace"

    def __init__(self, center: float = 0.0, rate: float = SQRT2, label: str = ""):
        if not rate > 0:
            raise ValueError(f"Laplace rate must be positive, got {rate}")
        self.center = float(center)
        self.rate = float(rate)
        self._dist = stats.laplace(loc=self.center, scale=1.0 / self.rate)
        super().__init__(label or "laplace")

    def log_pdf(self, x):
        return _out(self._dist.logpdf(x))

    def cdf(self, x):
        return _out(self._dist.cdf(x))

    def sf(self, x):
        return _out(self._dist.sf(x))

    def quantile(self, u):
        u = check_open_unit(u)
        return _out(self._dist.ppf(u))

    def isf(self, v):
        v = check_open_unit(v, "survival")
        return _out(self._dist.isf(v))

    def breakpoints(self) -> List[float]:
        return [self.center]

    def support_interval(self) -> Tuple[float, float]:
        return (-np.inf, np.inf)

    def mean(self) -> float:
        return self.center

    def variance(self) -> float:
        return 2.0 / self.rate ** 2

    def max_density(self) -> float:
        return self.rate / 2.0

    @property
    def symmetry_center(self) -> Optional[float]:
        return self.center

    def _draw_values(self, rng, count):
        return self.quantile(open_unit_uniform(rng, count))


# ═══════════════════════════════════════════════════════════════
# CONVOLUTION LAWS
# ═══════════════════════════════════════════════════════════════

class GaussianUniform1D(Density1D):
    """N(0, S²) ⊕ Uniform[−hw, hw], shifted to `center`."""

    structure = "convolution"

    def __init__(self, center: float, sd: float, half_width: float, label: str = ""):
        self.center = float(center)
        self.sd = float(sd)
        self.half_width = float(half_width)
        super().__init__(label or "gaussian+uniform")

    def _log_pdf_left(self, y):
        # y <= 0; log of Φ(a) − Φ(b) with b < a
        a = (y + self.half_width) / self.sd
        b = (y - self.half_width) / self.sd
        la, lb = special.log_ndtr(a), special.log_ndtr(b)
        return la + np.log(-np.expm1(lb - la)) - np.log(2.0 * self.half_width)

    def log_pdf(self, x):
        y = np.asarray(x, dtype=float) - self.center
        return _out(self._log_pdf_left(-np.abs(y)))

    def _cdf_left(self, y):
        # y <= 0; S/(2hw)·[G((y+hw)/S) − G((y−hw)/S)] with G(u) = uΦ(u) + φ(u)
        def antiderivative(u):
            return u * special.ndtr(u) + np.exp(-0.5 * u * u) / np.sqrt(2.0 * np.pi)

        s, hw = self.sd, self.half_width
        value = s / (2.0 * hw) * (antiderivative((y + hw) / s) - antiderivative((y - hw) / s))
        return np.clip(value, 0.0, 0.5)

    def cdf(self, x):
        y = np.asarray(x, dtype=float) - self.center
        left = self._cdf_left(-np.abs(y))
        return _out(np.where(y <= 0, left, 1.0 - left))

    def sf(self, x):
        y = np.asarray(x, dtype=float) - self.center
        left = self._cdf_left(-np.abs(y))
        return _out(np.where(y >= 0, left, 1.0 - left))

    def support_interval(self) -> Tuple[float, float]:
        return (-np.inf, np.inf)

    def mean(self) -> float:
        return self.center

    def variance(self) -> float:
        return self.sd ** 2 + self.half_width ** 2 / 3.0

    def max_density(self) -> float:
        return float((2.0 * special.ndtr(self.half_width / self.sd) - 1.0) / (2.0 * self.half_width))

    @property
    def symmetry_center(self) -> Optional[float]:
        return self.center

    def _draw_values(self, rng, count):
        return (self.center + self.sd * rng.standard_normal(count)
                + self.half_width * (2.0 * open_unit_uniform(rng, count) - 1.0))


class GaussianLaplace1D(Density1D):
    """N(0, S²) ⊕ Laplace(rate λ), shifted to `center`."""

    structure = "convolution"

    def __init__(self, center: float, sd: float, rate: float, label: str = ""):
        self.center = float(center)
        self.sd = float(sd)
        self.rate = float(rate)
        super().__init__(label or "gaussian+laplace")

    def _log_branch(self, y):
        # log of exp(λ²S²/2 − λy)·erfc(z), z = (λS² − y)/(S√2)
        s, lam = self.sd, self.rate
        z = (lam * s * s - y) / (s * SQRT2)
        with np.errstate(divide="ignore"):
            scaled = -0.5 * (y / s) ** 2 + np.log(special.erfcx(np.maximum(z, 0.0)))
            direct = 0.5 * (lam * s) ** 2 - lam * y + np.log(special.erfc(np.minimum(z, 0.0)))
        return np.where(z >= 0, scaled, direct)

    def log_pdf(self, x):
        y = np.asarray(x, dtype=float) - self.center
        both = np.logaddexp(self._log_branch(y), self._log_branch(-y))
        return _out(np.log(self.rate / 4.0) + both)

    def _cdf_left(self, y):
        # y <= 0; ½·P[Z + E <= y] + ½·P[Z − E <= y] with E ~ Exp(λ)
        s, lam = self.sd, self.rate
        half_var = 0.5 * (lam * s) ** 2
        plus = special.ndtr(y / s) - np.exp(half_var - lam * y + special.log_ndtr(y / s - lam * s))
        minus = special.ndtr(y / s) + np.exp(half_var + lam * y + special.log_ndtr(-y / s - lam * s))
        return np.clip(0.5 * np.maximum(plus, 0.0) + 0.5 * minus, 0.0, 0.5)

    def cdf(self, x):
        y = np.asarray(x, dtype=float) - self.center
        left = self._cdf_left(-np.abs(y))
        return _out(np.where(y <= 0, left, 1.0 - left))

    def sf(self, x):
        y = np.asarray(x, dtype=float) - self.center
        left = self._cdf_left(-np.abs(y))
        return _out(np.where(y >= 0, left, 1.0 - left))

    def breakpoints(self) -> List[float]:
        return [self.center]

    def support_interval(self) -> Tuple[float, float]:
        return (-np.inf, np.inf)

    def mean(self) -> float:
        return self.center

    def variance(self) -> float:
        return self.sd ** 2 + 2.0 / self.rate ** 2

    def max_density(self) -> float:
        return float(0.5 * self.rate * special.erfcx(self.rate * self.sd / SQRT2))

    @property
    def symmetry_center(self) -> Optional[float]:
        return self.center

    def _draw_values(self, rng, count):
        signs = np.where(open_unit_uniform(rng, count) < 0.5, -1.0, 1.0)
        magnitudes = -np.log(open_unit_uniform(rng, count)) / self.rate
        return self.center + self.sd * rng.standard_normal(count) + signs * magnitudes


class GridDensity1D(Density1D):
    """
    A density tabulated on a uniform grid, with analytic moments supplied
    by whoever built the grid (the grid itself truncates the tails).
    """

    structure = "grid"

    def __init__(self, grid: GridFunction, mean: float, variance: float, label: str = ""):
        self.grid = grid.normalized()
        self._mean = float(mean)
        self._variance = float(variance)
        cumulative = self.grid.cumulative()
        self._cumulative = cumulative / cumulative[-1]
        super().__init__(label or "grid")

    def log_pdf(self, x):
        with np.errstate(divide="ignore"):
            return _out(np.log(self.grid(x)))

    def cdf(self, x):
        return _out(np.interp(x, self.grid.nodes, self._cumulative, left=0.0, right=1.0))

    def sf(self, x):
        return _out(1.0 - self.cdf(x))

    def quantile(self, u):
        u = check_open_unit(u)
        return bracketed_inverse(self.cdf, u, self.support_interval(), self.support_interval())[()]

    def isf(self, v):
        v = check_open_unit(v, "survival")
        return self.quantile(1.0 - v)

    def support_interval(self) -> Tuple[float, float]:
        return (float(self.grid.nodes[0]), float(self.grid.nodes[-1]))

    def mean(self) -> float:
        return self._mean

    def variance(self) -> float:
        return self._variance

    def max_density(self) -> float:
        return float(np.max(self.grid.values))

    def _draw_values(self, rng, count):
        return np.interp(open_unit_uniform(rng, count), self._cumulative, self.grid.nodes)


class Convolution1D(Density1D):
    """
    Law of Σ wᵢ·Yᵢ for independent 1-D components Yᵢ.

    Sampling sums weighted component samples; moments are analytic;
    density, CDF and quantiles are delegated to `self.law`, picked at
    construction (see the module docstring).

    Example:
        >>> Convolution1D([Gaussian1D(), Uniform1D()], [0.6, 0.8])
    """

    structure = "convolution"

    def __init__(
        self,
        components: Sequence[Density1D],
        weights: Sequence[float],
        grid_nodes: int = 16384,
        label: str = "",
    ):
        if len(components) == 0 or len(components) != len(weights):
            raise ValueError("Convolution1D needs matching, nonempty components and weights")
        kept = []
        for component, weight in zip(components, weights):
            if isinstance(component, Convolution1D):
                # flatten, so Gaussian parts of nested convolutions merge
                kept.extend((c, float(weight) * w)
                            for c, w in zip(component.components, component.weights))
            else:
                kept.append((component, float(weight)))
        kept = [(c, w) for c, w in kept if w != 0.0]
        if not kept:
            raise ValueError("Convolution1D needs at least one nonzero weight")
        for component, _ in kept:
            if not isinstance(component, Density1D):
                raise ValueError("Convolution1D components must be one-dimensional")

        self.components = [c for c, _ in kept]
        self.weights = [w for _, w in kept]
        self.grid_nodes = int(grid_nodes)
        super().__init__(label or "convolution")
        self.law = self._choose_law()

    def _choose_law(self) -> Density1D:
        gaussian_mean, gaussian_var = 0.0, 0.0
        rest: List[Density1D] = []
        for component, w in zip(self.components, self.weights):
            if isinstance(component, Gaussian1D):
                gaussian_mean += w * component.loc
                gaussian_var += (w * component.sd) ** 2
            else:
                rest.append(scale_density(component, w))

        sd = np.sqrt(gaussian_var)
        if not rest:
            return Gaussian1D(gaussian_mean, sd, label=self.label)
        if len(rest) == 1 and gaussian_var == 0.0:
            return shift_density(rest[0], gaussian_mean)
        if len(rest) == 1 and isinstance(rest[0], Uniform1D):
            return GaussianUniform1D(gaussian_mean + rest[0].center, sd, rest[0].half_width,
                                     label=self.label)
        if len(rest) == 1 and isinstance(rest[0], Laplace1D):
            return GaussianLaplace1D(gaussian_mean + rest[0].center, sd, rest[0].rate,
                                     label=self.label)

        parts = rest + ([Gaussian1D(gaussian_mean, sd)] if gaussian_var > 0 else [])
        return grid_convolution(parts, self.grid_nodes, self.mean(), self.variance(), self.label)

    # ── delegation ─────────────────────────────────────────────────
    def log_pdf(self, x):
        return self.law.log_pdf(x)

    def cdf(self, x):
        return self.law.cdf(x)

    def sf(self, x):
        return self.law.sf(x)

    def quantile(self, u):
        return self.law.quantile(u)

    def isf(self, v):
        return self.law.isf(v)

    def breakpoints(self) -> List[float]:
        return self.law.breakpoints()

    def support_interval(self) -> Tuple[float, float]:
        return self.law.support_interval()

    def max_density(self) -> float:
        return self.law.max_density()

    @property
    def symmetry_center(self) -> Optional[float]:
        return self.law.symmetry_center

    # ── analytic moments ───────────────────────────────────────────
    def mean(self) -> float:
        return float(sum(w * c.mean() for c, w in zip(self.components, self.weights)))

    def variance(self) -> float:
        return float(sum(w * w * c.variance() for c, w in zip(self.components, self.weights)))

    def _draw_values(self, rng, count):
        total = np.zeros(count)
        for component, w in zip(self.components, self.weights):
            total += w * component._draw_values(rng, count)
        return total


def scale_density(d: Density1D, factor: float) -> Density1D:
    """Law of factor·Y as a family member where possible."""
    if factor == 1.0:
        return d
    return affine_density(d, 0.0, factor)


def shift_density(d: Density1D, offset: float) -> Density1D:
    """Law of Y + offset."""
    if offset == 0.0:
        return d
    return affine_density(d, offset, 1.0)


def affine_density(d: Density1D, offset: float, factor: float) -> Density1D:
    """Law of offset + factor·Y (factor ≠ 0)."""
    if factor == 0.0:
        raise ValueError("affine map needs a nonzero factor")
    scale = abs(factor)
    if isinstance(d, Gaussian1D):
        return Gaussian1D(offset + factor * d.loc, scale * d.sd, label=d.label)
    if isinstance(d, Uniform1D):
        return Uniform1D(offset + factor * d.center, scale * d.half_width, label=d.label)
    if isinstance(d, Laplace1D):
        return Laplace1D(offset + factor * d.center, d.rate / scale, label=d.label)
    return WhitenedDensity1D(d, -offset / factor, 1.0 / factor, label=d.label)


def grid_convolution(
    parts: Sequence[Density1D], nodes: int, mean: float, variance: float, label: str = ""
) -> GridDensity1D:
    """
    Convolve centered parts on a shared symmetric grid, then shift by `mean`.

    Each part enters as cell averages (F(x + h/2) − F(x − h/2))/h, so a
    jump in the density costs O(h²) instead of O(h).
    """
    half_span = 0.0
    for part in parts:
        lo, hi = part.effective_support()
        c = part.mean()
        half_span += max(c - lo, hi - c)
    half_span *= 1.05
    count = int(nodes) | 1  # odd: node count // 2 sits at offset 0
    x = uniform_grid(-half_span, half_span, count)
    h = x[1] - x[0]

    density: Optional[GridFunction] = None
    for part in parts:
        c = part.mean()
        cell = (part.cdf(x + c + 0.5 * h) - part.cdf(x + c - 0.5 * h)) / h
        if density is None:
            density = GridFunction(x, cell)
        else:
            density = convolve_on_grid(density, cell)

    shifted = GridFunction(x + mean, density.values)
    return GridDensity1D(shifted, mean, variance, label=label or "grid")


class WhitenedDensity1D(Density1D):
    """Law of (Y − mean)/sd for a 1-D Y outside the closed families."""

    structure = "whitened"

    def __init__(self, raw: Density1D, mean: float, sd: float, label: str = ""):
        if sd == 0:
            raise ValueError("whitening scale must be nonzero")
        self.raw = raw
        self.shift = float(mean)
        self.scale = float(sd)
        super().__init__(label or f"whitened {raw.label}")

    def _to_raw(self, x):
        return self.shift + self.scale * np.asarray(x, dtype=float)

    def _from_raw(self, y):
        return (np.asarray(y, dtype=float) - self.shift) / self.scale

    def log_pdf(self, x):
        return _out(self.raw.log_pdf(self._to_raw(x)) + np.log(abs(self.scale)))

    def cdf(self, x):
        if self.scale > 0:
            return self.raw.cdf(self._to_raw(x))
        return self.raw.sf(self._to_raw(x))

    def sf(self, x):
        if self.scale > 0:
            return self.raw.sf(self._to_raw(x))
        return self.raw.cdf(self._to_raw(x))

    def quantile(self, u):
        raw = self.raw.quantile(u) if self.scale > 0 else self.raw.isf(u)
        return _out(self._from_raw(raw))

    def isf(self, v):
        raw = self.raw.isf(v) if self.scale > 0 else self.raw.quantile(v)
        return _out(self._from_raw(raw))

    def breakpoints(self) -> List[float]:
        return sorted(float(self._from_raw(b)) for b in self.raw.breakpoints())

    def support_interval(self) -> Tuple[float, float]:
        ends = sorted(float(self._from_raw(e)) for e in self.raw.support_interval())
        return (ends[0], ends[1])

    def mean(self) -> float:
        return float(self._from_raw(self.raw.mean()))

    def variance(self) -> float:
        return self.raw.variance() / self.scale ** 2

    def max_density(self) -> float:
        return self.raw.max_density() * abs(self.scale)

    @property
    def symmetry_center(self) -> Optional[float]:
        center = self.raw.symmetry_center
        return None if center is None else float(self._from_raw(center))

    def _draw_values(self, rng, count):
        return self._from_raw(self.raw._draw_values(rng, count))


# ═══════════════════════════════════════════════════════════════
# MULTI-DIMENSIONAL FAMILIES
# ═══════════════════════════════════════════════════════════════

class GaussianDensity(LogConcaveDensity):
    """N(mean, cov) on R^n, n >= 1."""

    structure = "gaussian"

    def __init__(self, mean, cov, label: str = ""):
        mean = np.atleast_1d(np.asarray(mean, dtype=float))
        cov = np.atleast_2d(np.asarray(cov, dtype=float))
        super().__init__(mean.size, label or f"gaussian{mean.size}")
        check_spd(cov, self.dimension)
        self.loc = mean
        self.cov = cov
        self._chol = linalg.cholesky(cov, lower=True)
        self._log_norm = -0.5 * self.dimension * LOG_2PI - np.sum(np.log(np.diag(self._chol)))

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        flat = x.reshape(-1, self.dimension) - self.loc
        z = linalg.solve_triangular(self._chol, flat.T, lower=True)
        values = self._log_norm - 0.5 * np.sum(z * z, axis=0)
        return _out(values.reshape(x.shape[:-1]))

    def support_box(self) -> np.ndarray:
        return np.tile([-np.inf, np.inf], (self.dimension, 1))

    def max_density(self) -> float:
        return float(np.exp(self._log_norm))

    def mean_vector(self) -> np.ndarray:
        return self.loc.copy()

    def covariance_matrix(self) -> np.ndarray:
        return self.cov.copy()

    def factors(self) -> Optional[List[Density1D]]:
        if not np.allclose(self.cov, np.diag(np.diag(self.cov)), atol=0.0):
            return None
        return [Gaussian1D(m, np.sqrt(v), label="gaussian")
                for m, v in zip(self.loc, np.diag(self.cov))]

    def _draw(self, rng, count):
        return self.loc + rng.standard_normal((count, self.dimension)) @ self._chol.T


class ProductDensity(LogConcaveDensity):
    """Independent 1-D coordinates; sampling draws column by column."""

    structure = "product"

    def __init__(self, components: Sequence[Density1D], label: str = ""):
        components = list(components)
        if not components:
            raise ValueError("ProductDensity needs at least one component")
        for component in components:
            if not isinstance(component, Density1D):
                raise ValueError("ProductDensity components must be one-dimensional")
        self.components = components
        super().__init__(len(components), label or "×".join(c.label for c in components))

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape[:-1])
        for i, component in enumerate(self.components):
            total = total + component.log_pdf(x[..., i])
        return _out(total)

    def support_box(self) -> np.ndarray:
        return np.array([c.support_interval() for c in self.components], dtype=float)

    def max_density(self) -> float:
        return float(np.prod([c.max_density() for c in self.components]))

    def mean_vector(self) -> np.ndarray:
        return np.array([c.mean() for c in self.components])

    def covariance_matrix(self) -> np.ndarray:
        return np.diag([c.variance() for c in self.components])

    def factors(self) -> Optional[List[Density1D]]:
        return list(self.components)

    def _draw(self, rng, count):
        return np.column_stack([c._draw_values(rng, count) for c in self.components])


class WhitenedDensity(LogConcaveDensity):
    """Pushforward of an n-D density under x ↦ cov^{-1/2}(x − mean)."""

    structure = "whitened"

    def __init__(self, raw: LogConcaveDensity, mean, cov, label: str = ""):
        super().__init__(raw.dimension, label or f"whitened {raw.label}")
        cov = np.atleast_2d(np.asarray(cov, dtype=float))
        check_spd(cov, self.dimension)
        eigenvalues, vectors = linalg.eigh(cov)
        self.raw = raw
        self.shift = np.atleast_1d(np.asarray(mean, dtype=float))
        self.root = (vectors * np.sqrt(eigenvalues)) @ vectors.T
        self.inverse_root = (vectors / np.sqrt(eigenvalues)) @ vectors.T
        self.log_jacobian = 0.5 * float(np.sum(np.log(eigenvalues)))

    def log_pdf(self, x):
        x = np.asarray(x, dtype=float)
        raw_points = self.shift + x @ self.root.T
        return _out(np.asarray(self.raw.log_pdf(raw_points)) + self.log_jacobian)

    def support_box(self) -> np.ndarray:
        return np.tile([-np.inf, np.inf], (self.dimension, 1))

    def max_density(self) -> float:
        return self.raw.max_density() * float(np.exp(self.log_jacobian))

    def mean_vector(self) -> np.ndarray:
        return self.inverse_root @ (self.raw.mean_vector() - self.shift)

    def covariance_matrix(self) -> np.ndarray:
        return self.inverse_root @ self.raw.covariance_matrix() @ self.inverse_root.T

    def _draw(self, rng, count):
        return (self.raw._draw(rng, count) - self.shift) @ self.inverse_root.T


def check_spd(cov: np.ndarray, dimension: int) -> None:
    """Raise ValueError unless `cov` is a symmetric positive definite n×n matrix."""
    if cov.shape != (dimension, dimension):
        raise ValueError(f"covariance must be {dimension}x{dimension}, got shape {cov.shape}")
    if not np.allclose(cov, cov.T, rtol=1e-12, atol=1e-14):
        raise ValueError("covariance must be symmetric")
    if np.min(linalg.eigvalsh(cov)) <= 0:
        raise ValueError("covariance must be positive definite")
