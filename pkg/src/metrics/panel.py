"""
METRIC PANEL
============

All distances of one (μ, ν) pair behind one object: 1-D pairs get the
exact quadrature/LP metrics, n-D pairs the Monte-Carlo estimates and
the d_BL sandwich. Each metric is computed at most once per panel, so a
bound check and a sweep column can ask for the same number freely.

METRIC IDS:
-----------
  bl, entropy, kl, kolmogorov, tv, w1, w1_dual, w2, w4

`bl` in n-D is the LOWER end of the sandwich, the conservative choice
for every reversed bound (d_BL sits on the right-hand side).
"""

from typing import Dict, Optional, Tuple

from ..distributions.density import LogConcaveDensity
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .entropy import differential_entropy, relative_entropy
from .multi_dim import bl_distance_nd_bounds, tv_distance_nd, wasserstein_p_nd_upper
from .one_dim import (
    bl_distance_1d,
    kolmogorov_distance_1d,
    tv_distance_1d,
    w1_dual_1d,
    wasserstein_p_1d,
)
from .result import MetricResult

METRIC_IDS = ("bl", "entropy", "kl", "kolmogorov", "tv", "w1", "w1_dual", "w2", "w4")


class MetricPanel:
    """Lazily computed, cached metrics of one pair."""

    def __init__(
        self,
        mu: LogConcaveDensity,
        nu: LogConcaveDensity,
        settings: NumericsSettings = DEFAULT_SETTINGS,
        seed: Optional[int] = None,
    ):
        if mu.dimension != nu.dimension:
            raise ValueError(f"dimension mismatch: {mu.dimension} vs {nu.dimension}")
        self.mu = mu
        self.nu = nu
        self.settings = settings
        self.seed = settings.seed if seed is None else int(seed)
        self._cache: Dict[str, object] = {}

    @property
    def dimension(self) -> int:
        return self.mu.dimension

    @property
    def one_dimensional(self) -> bool:
        return self.dimension == 1

    def _cached(self, key: str, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    # ── metrics ────────────────────────────────────────────────────
    def tv(self) -> MetricResult:
        if self.one_dimensional:
            return self._cached("tv", lambda: tv_distance_1d(self.mu, self.nu, self.settings))
        return self._cached("tv", lambda: tv_distance_nd(
            self.mu, self.nu, seed=self.seed, settings=self.settings))

    def kolmogorov(self) -> MetricResult:
        if not self.one_dimensional:
            raise ValueError("the Kolmogorov distance is only defined for n = 1")
        return self._cached("kolmogorov",
                            lambda: kolmogorov_distance_1d(self.mu, self.nu, self.settings))

    def bl_bounds(self) -> Tuple[MetricResult, MetricResult]:
        """(lower, upper); both are the exact LP value in 1-D."""
        if self.one_dimensional:
            exact = self._cached("bl", lambda: bl_distance_1d(
                self.mu, self.nu, settings=self.settings))
            return exact, exact

        def compute():
            w1_upper = self.wasserstein(1.0) if self._is_product() else None
            return bl_distance_nd_bounds(self.mu, self.nu, seed=self.seed,
                                         settings=self.settings, tv=self.tv(),
                                         w1_upper=w1_upper)

        return self._cached("bl_bounds", compute)

    def bl(self) -> MetricResult:
        return self.bl_bounds()[0]

    def wasserstein(self, p: float) -> MetricResult:
        key = f"w{float(p):g}"
        if self.one_dimensional:
            return self._cached(key, lambda: wasserstein_p_1d(self.mu, self.nu, p, self.settings))
        return self._cached(key, lambda: wasserstein_p_nd_upper(
            self.mu, self.nu, p, seed=self.seed, settings=self.settings))

    def w1_dual(self) -> MetricResult:
        if not self.one_dimensional:
            raise ValueError("w1_dual is the one-dimensional CDF formula")
        return self._cached("w1_dual", lambda: w1_dual_1d(self.mu, self.nu, self.settings))

    def kl(self) -> MetricResult:
        return self._cached("kl", lambda: relative_entropy(
            self.mu, self.nu, self.settings, seed=self.seed))

    def entropy(self) -> MetricResult:
        """Differential entropy of μ."""
        return self._cached("entropy", lambda: differential_entropy(
            self.mu, self.settings, seed=self.seed))

    # ── dispatch ───────────────────────────────────────────────────
    def get(self, metric_id: str) -> MetricResult:
        """Look up a metric by its config id."""
        if metric_id == "tv":
            return self.tv()
        if metric_id == "kolmogorov":
            return self.kolmogorov()
        if metric_id == "bl":
            return self.bl()
        if metric_id in ("w1", "w2", "w4"):
            return self.wasserstein(float(metric_id[1:]))
        if metric_id == "w1_dual":
            return self.w1_dual()
        if metric_id == "kl":
            return self.kl()
        if metric_id == "entropy":
            return self.entropy()
        raise ValueError(f"Unknown metric id {metric_id!r}; expected one of {METRIC_IDS}")

    def _is_product(self) -> bool:
        return self.mu.factors() is not None and self.nu.factors() is not None
