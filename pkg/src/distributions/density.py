"""
LOG-CONCAVE DENSITIES — BASE CLASSES
====================================

PURPOSE:
--------
The interface every distribution in this package implements, plus the
numerical fallbacks (quadrature CDF, bracketed quantile inversion) that
concrete families override with closed forms where they have them.

KEY CLASSES:
------------
  • LogConcaveDensity: any dimension; log_pdf, support box, analytic
    mean/covariance, sup of the density, sampler, product factors
  • Density1D: one dimension, adds cdf / sf / quantile / isf,
    breakpoints (where the density is not smooth) and the effective
    support used to truncate quadratures

SHAPES:
-------
  • `log_pdf(x)` on a Density1D is elementwise over any array shape.
  • `log_pdf(x)` on an n-D density takes (..., n) and returns (...).
  • `log_pdf_points(points)` always takes (m, n) and returns (m,).
  • `sample(count, seed)` always returns (count, n).

DEBUGGING TIPS:
---------------
  • `isotropic` is computed from the analytic mean and covariance, so
    a family with a wrong moment formula shows up as non-isotropic
  • quantile(cdf(x)) should return x to ~1e-10 on the support interior
"""

from abc import ABC, abstractmethod
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy import integrate

from ..utils.random_streams import SeedLike, as_generator

# Absolute tolerance of bracketed quantile inversion
QUANTILE_XTOL = 1e-12
ISOTROPY_ATOL = 1e-12


def open_unit_uniform(rng: np.random.Generator, size) -> np.ndarray:
    """Uniforms strictly inside (0, 1), so inverse CDFs never see 0 or 1."""
    return (rng.integers(0, 2 ** 53, size=size) + 0.5) / 2.0 ** 53


def check_open_unit(levels, what: str = "quantile") -> np.ndarray:
    """Array of probability levels, all strictly inside (0, 1)."""
    levels = np.asarray(levels, dtype=float)
    if np.any((levels <= 0.0) | (levels >= 1.0)):
        raise ValueError(f"{what} level must lie in the open interval (0, 1)")
    return levels


def bracketed_inverse(
    func: Callable[[np.ndarray], np.ndarray],
    targets,
    support: Tuple[float, float],
    start: Tuple[float, float],
    increasing: bool = True,
    xtol: float = QUANTILE_XTOL,
    max_iter: int = 200,
) -> np.ndarray:
    """
    Solve func(x) = target elementwise for a monotone `func`.

    Brackets are grown geometrically from `start` (clipped to `support`),
    then bisected until their width is below xtol·max(1, |x|). Everything
    is vectorized, so one call inverts a whole array of targets.
    """
    targets = np.asarray(targets, dtype=float)
    shape = targets.shape
    y = targets.ravel()
    sign = 1.0 if increasing else -1.0

    lo_edge, hi_edge = support
    lo = np.full(y.shape, max(start[0], lo_edge))
    hi = np.full(y.shape, min(start[1], hi_edge))

    # grow the bracket until func(lo) <= y <= func(hi) (for increasing func)
    for _ in range(max_iter):
        too_high = sign * (func(lo) - y) > 0
        if not np.any(too_high):
            break
        width = np.maximum(hi - lo, 1.0)
        lo = np.where(too_high, np.maximum(lo - 2.0 * width, lo_edge), lo)
    for _ in range(max_iter):
        too_low = sign * (func(hi) - y) < 0
        if not np.any(too_low):
            break
        width = np.maximum(hi - lo, 1.0)
        hi = np.where(too_low, np.minimum(hi + 2.0 * width, hi_edge), hi)

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if np.all(hi - lo <= xtol * np.maximum(1.0, np.abs(mid))):
            break
        below = sign * (func(mid) - y) < 0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)

    return (0.5 * (lo + hi)).reshape(shape)


class LogConcaveDensity(ABC):
    """
    A log-concave probability density on R^n.

    Subclasses provide the log-density, analytic first two moments,
    the support box and a sampler. `structure` names the family
    (gaussian, uniform, laplace, product, convolution, whitened, grid).
    """

    structure: str = "abstract"

    def __init__(self, dimension: int, label: str = ""):
        if int(dimension) < 1:
            raise ValueError(f"dimension must be a positive integer, got {dimension}")
        self.dimension = int(dimension)
        self.label = label or self.structure

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label}, n={self.dimension})"

    # ── density ────────────────────────────────────────────────────
    @abstractmethod
    def log_pdf(self, x):
        """Log-density; −inf off the support."""

    def pdf(self, x):
        return np.exp(self.log_pdf(x))

    def log_pdf_points(self, points: np.ndarray) -> np.ndarray:
        """Log-density of an (m, n) array of points."""
        return self.log_pdf(np.asarray(points, dtype=float))

    @abstractmethod
    def support_box(self) -> np.ndarray:
        """(n, 2) array of coordinate intervals (±inf when unbounded)."""

    @abstractmethod
    def max_density(self) -> float:
        """‖f‖_∞ (attained at the mode for every family here)."""

    # ── moments ────────────────────────────────────────────────────
    @abstractmethod
    def mean_vector(self) -> np.ndarray:
        """Analytic mean."""

    @abstractmethod
    def covariance_matrix(self) -> np.ndarray:
        """Analytic covariance."""

    @property
    def isotropic(self) -> bool:
        """True when the analytic mean is 0 and the covariance is I."""
        return bool(
            np.allclose(self.mean_vector(), 0.0, atol=ISOTROPY_ATOL)
            and np.allclose(self.covariance_matrix(), np.eye(self.dimension), atol=ISOTROPY_ATOL)
        )

    # ── structure ──────────────────────────────────────────────────
    def factors(self) -> Optional[List["Density1D"]]:
        """The 1-D factors when the density is a product, else None."""
        return None

    def in_support(self, points: np.ndarray) -> np.ndarray:
        """Boolean mask of (m, n) points lying in the closed support box."""
        box = self.support_box()
        points = np.atleast_2d(points)
        return np.all((points >= box[:, 0]) & (points <= box[:, 1]), axis=1)

    # ── sampling ───────────────────────────────────────────────────
    @abstractmethod
    def _draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count, n) i.i.d. samples from `rng`."""

    def sample(self, count: int, seed: SeedLike = None) -> np.ndarray:
        """
        `count` i.i.d. samples as a (count, n) array.

        `seed` may be an int (fresh generator) or a numpy Generator
        (consumed in place). A fixed int seed gives identical output.
        """
        if int(count) < 1:
            raise ValueError(f"sample count must be >= 1, got {count}")
        return self._draw(as_generator(seed), int(count))


class Density1D(LogConcaveDensity):
    """
    A log-concave density on the real line.

    Subclasses must implement `log_pdf`, `support_interval`, `mean`,
    `variance`, `max_density` and `_draw_values`. The CDF, survival
    function and both quantile functions fall back to quadrature and
    bracketed inversion; families override them with closed forms.
    """

    def __init__(self, label: str = ""):
        super().__init__(1, label)

    # ── interface to implement ─────────────────────────────────────
    @abstractmethod
    def support_interval(self) -> Tuple[float, float]:
        """Closed support [lo, hi] (infinite ends allowed)."""

    @abstractmethod
    def mean(self) -> float:
        """Analytic mean."""

    @abstractmethod
    def variance(self) -> float:
        """Analytic variance."""

    @abstractmethod
    def _draw_values(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """(count,) samples."""

    def breakpoints(self) -> List[float]:
        """Points where the density is not smooth (jumps, kinks)."""
        return []

    @property
    def symmetry_center(self) -> Optional[float]:
        """Center of symmetry when the density is symmetric, else None."""
        return None

    # ── LogConcaveDensity plumbing ─────────────────────────────────
    def log_pdf_points(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return self.log_pdf(points.reshape(len(points), -1)[:, 0])

    def support_box(self) -> np.ndarray:
        return np.array([self.support_interval()], dtype=float)

    def mean_vector(self) -> np.ndarray:
        return np.array([self.mean()])

    def covariance_matrix(self) -> np.ndarray:
        return np.array([[self.variance()]])

    def factors(self) -> Optional[List["Density1D"]]:
        return [self]

    def _draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return self._draw_values(rng, count).reshape(count, 1)

    # ── distribution functions (numerical fallbacks) ───────────────
    def cdf(self, x):
        """P[X <= x] by adaptive quadrature from the left support edge."""
        x = np.asarray(x, dtype=float)
        lo, hi = self.effective_support()
        out = np.empty(x.shape)
        flat = out.ravel()
        for i, xi in enumerate(x.ravel()):
            if xi <= lo:
                flat[i] = 0.0
            elif xi >= hi:
                flat[i] = 1.0
            else:
                pts = [b for b in self.breakpoints() if lo < b < xi]
                value, _ = integrate.quad(self.pdf, lo, xi, points=pts or None, limit=200)
                flat[i] = min(max(value, 0.0), 1.0)
        return out.reshape(x.shape)[()]

    def sf(self, x):
        """P[X > x]."""
        return 1.0 - self.cdf(x)

    def quantile(self, u):
        """Inverse CDF by bracketed bisection."""
        u = check_open_unit(u)
        return bracketed_inverse(self.cdf, u, self.support_interval(), self._start_bracket())[()]

    def isf(self, v):
        """Inverse survival function: the x with P[X > x] = v."""
        v = check_open_unit(v, "survival")
        return bracketed_inverse(
            self.sf, v, self.support_interval(), self._start_bracket(), increasing=False
        )[()]

    def _start_bracket(self) -> Tuple[float, float]:
        m, s = self.mean(), np.sqrt(self.variance())
        return (m - s, m + s)

    def effective_support(self, epsilon: float = 1e-12) -> Tuple[float, float]:
        """
        Support truncated to [quantile(ε), isf(ε)] on unbounded sides.

        Bounded sides keep their exact endpoints.
        """
        lo, hi = self.support_interval()
        if not np.isfinite(lo):
            lo = float(self.quantile(epsilon))
        if not np.isfinite(hi):
            hi = float(self.isf(epsilon))
        return float(lo), float(hi)
