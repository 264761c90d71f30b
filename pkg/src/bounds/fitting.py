"""
CONSTANT FITTING
================

PURPOSE:
--------
Turns lists of BoundChecks into fitted constants and runs the fixed
suites the constants are fitted on.

RESPONSIBILITIES:
-----------------
1. fit_constant: smallest admissible constant for one bound key
   (largest instance ratio; for the Paouris tail, the smallest rate)
2. fit_suite: one FitResult per key, with the argmax instance, a
   tightness probe and the re-scored checks
3. Suite runners for the catalog pairs and the lemma suites
4. evaluate_pair_bounds: every requested bound on one MetricPanel,
   used by the sweep controller

FIT ORDER:
----------
The wq-wp bound has an inner constant c inside its logarithm. It is
fixed first by fitting paouris-moment; the outer C is fitted afterwards
with c held at that value. Likewise tv-bl-smoothing uses the fitted
deconvolution constant and w1-truncation reports the fitted tail rate.
These three fits are cached per NumericsSettings.

DEBUGGING TIPS:
---------------
  • A FitResult with tight=False usually means the argmax instance has
    a tolerance larger than 1% of its right side (Monte-Carlo bands)
  • An infinite fitted constant names its culprit in `argmax_inputs`
"""

import logging
import math
from collections import OrderedDict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence

from ..distributions.catalog import catalog_1d, catalog_nd, catalog_pairs_1d
from ..metrics.panel import MetricPanel
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .comparisons import (
    WP_MONOTONE_ORDERS,
    WQ_WP_ORDERS,
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
)
from .lemmas import (
    check_bobkov_madiman,
    check_eldan_klartag,
    check_paouris_moment,
    check_paouris_tail,
    check_smoothing_tradeoff,
    check_truncation_tradeoff,
)
from .model import BoundCheck, get_bound_spec

logger = logging.getLogger(__name__)

# A fitted constant moved by this factor must break at least one instance
TIGHTNESS_FACTOR = 0.99


@dataclass
class FitResult:
    """Outcome of fitting (or, for classical bounds, just scoring) one key."""

    key: str
    bound_id: str
    fit: str
    constant: Optional[float]
    instance_count: int
    vacuous_count: int
    failures: int
    tight: Optional[bool] = None
    argmax_ratio: Optional[float] = None
    argmax_inputs: Dict[str, Any] = field(default_factory=dict)
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def all_vacuous(self) -> bool:
        return self.instance_count > 0 and self.vacuous_count == self.instance_count

    @property
    def slacks(self) -> List[float]:
        return [c.slack for c in self.checks if not c.vacuous]


def _select(key: str, checks: Sequence[BoundCheck]) -> List[BoundCheck]:
    selected = [c for c in checks if c.key == key]
    if not selected:
        raise ValueError(f"no checks for bound key {key!r}")
    return selected


def fit_constant(key: str, checks: Sequence[BoundCheck]) -> float:
    """
    Smallest constant for which every non-vacuous instance of `key` holds.

    Raises:
        ValueError: no checks for the key, a bound without a free
            constant, or an all-vacuous suite

    Example:
        >>> check = BoundCheck("tv-bl", lhs=2.0, unit_rhs=1.0)
        >>> fit_constant("tv-bl", [check])
        2.0
    """
    selected = _select(key, checks)
    fit = selected[0].fit
    if fit == "none":
        raise ValueError(f"{key} has no free constant to fit")
    ratios = [c.ratio for c in selected if not c.vacuous]
    if not ratios:
        raise ValueError(f"all-vacuous suite for {key}: every instance has both sides ~0")
    return max(ratios) if fit == "multiplier" else min(ratios)


def apply_constant(checks: Sequence[BoundCheck], constant: float) -> List[BoundCheck]:
    return [c.with_constant(constant) for c in checks]


def is_tight(checks: Sequence[BoundCheck], constant: float,
             factor: float = TIGHTNESS_FACTOR) -> bool:
    """True when moving the constant 1% toward failure breaks an instance."""
    if not checks:
        return False
    moved = constant * factor if checks[0].fit == "multiplier" else constant / factor
    return any(not c.with_constant(moved, fitted=False).holds for c in checks)


def _argmax(selected: Sequence[BoundCheck]) -> Optional[BoundCheck]:
    live = [c for c in selected if not c.vacuous]
    if not live:
        return None
    if selected[0].fit == "rate":
        return min(live, key=lambda c: c.ratio)
    if selected[0].fit == "none":
        return min(live, key=lambda c: c.slack)
    return max(live, key=lambda c: c.ratio)


def fit_suite(checks: Sequence[BoundCheck],
              constants: Optional[Dict[str, float]] = None) -> "OrderedDict[str, FitResult]":
    """
    One FitResult per bound key, in sorted key order.

    Keys in `constants` use that value instead of a fit; fixed bounds
    are only scored. All-vacuous keys get constant None.
    """
    constants = constants or {}
    results: "OrderedDict[str, FitResult]" = OrderedDict()
    for key in sorted({c.key for c in checks}):
        selected = _select(key, checks)
        fit = selected[0].fit
        constant: Optional[float] = None
        tight: Optional[bool] = None

        if fit != "none":
            if key in constants:
                constant = float(constants[key])
            else:
                try:
                    constant = fit_constant(key, selected)
                except ValueError:
                    logger.info("[FIT] %s: all instances vacuous", key)
            if constant is not None:
                selected = apply_constant(selected, constant)
                if math.isfinite(constant):
                    tight = is_tight(selected, constant)

        worst = _argmax(selected)
        results[key] = FitResult(
            key=key,
            bound_id=selected[0].bound_id,
            fit=fit,
            constant=constant,
            instance_count=len(selected),
            vacuous_count=sum(c.vacuous for c in selected),
            failures=sum(not c.holds for c in selected),
            tight=tight,
            argmax_ratio=None if worst is None else worst.ratio,
            argmax_inputs={} if worst is None else dict(worst.inputs),
            checks=list(selected),
        )
        logger.debug("[FIT] %s: constant=%s over %d instances", key, constant, len(selected))
    return results


# ═══════════════════════════════════════════════════════════════
# LEMMA SUITES
# ═══════════════════════════════════════════════════════════════

def _members(n: int, settings: NumericsSettings):
    if n == 1:
        return catalog_1d(settings.convolution_nodes)
    return catalog_nd(n, grid_nodes=settings.convolution_nodes)


def eldan_klartag_suite(settings: NumericsSettings = DEFAULT_SETTINGS) -> List[BoundCheck]:
    """Deconvolution gaps over the 1-D catalog and the t-grid."""
    return [check_eldan_klartag(f, t, settings=settings)
            for _, f in catalog_1d(settings.convolution_nodes) for t in settings.t_grid]


def paouris_suite(settings: NumericsSettings = DEFAULT_SETTINGS,
                  dimensions: Optional[Sequence[int]] = None) -> List[BoundCheck]:
    """Tail checks at R = m·√n and moment checks at every configured order."""
    checks = []
    for n in dimensions or settings.paouris_dimensions:
        for _, mu in _members(n, settings):
            for m in settings.radius_multipliers:
                checks.append(check_paouris_tail(mu, m * math.sqrt(n), settings=settings))
            for p in settings.moment_orders:
                checks.append(check_paouris_moment(mu, p, settings=settings))
    return checks


def bobkov_madiman_suite(settings: NumericsSettings = DEFAULT_SETTINGS,
                         dimensions: Optional[Sequence[int]] = None) -> List[BoundCheck]:
    return [check_bobkov_madiman(mu, settings=settings)
            for n in dimensions or settings.paouris_dimensions
            for _, mu in _members(n, settings)]


@lru_cache(maxsize=8)
def fitted_eldan_klartag_constant(settings: NumericsSettings = DEFAULT_SETTINGS) -> float:
    return fit_constant("eldan-klartag", eldan_klartag_suite(settings))


@lru_cache(maxsize=8)
def _paouris_fits(settings: NumericsSettings) -> Dict[str, float]:
    checks = paouris_suite(settings)
    return {"paouris-moment": fit_constant("paouris-moment", checks),
            "paouris-tail": fit_constant("paouris-tail", checks)}


def fitted_paouris_moment_constant(settings: NumericsSettings = DEFAULT_SETTINGS) -> float:
    """The wq-wp inner constant c."""
    return _paouris_fits(settings)["paouris-moment"]


def fitted_paouris_tail_rate(settings: NumericsSettings = DEFAULT_SETTINGS) -> float:
    return _paouris_fits(settings)["paouris-tail"]


# ═══════════════════════════════════════════════════════════════
# PAIR BOUNDS
# ═══════════════════════════════════════════════════════════════

def evaluate_pair_bounds(bound_ids: Sequence[str], panel: MetricPanel,
                         settings: NumericsSettings = DEFAULT_SETTINGS) -> List[BoundCheck]:
    """
    Every requested pair-level bound on one panel.

    wq-wp and wp-monotone expand into one check per (p, q) order and
    w1-truncation into one per radius multiplier. Errors propagate: the
    caller decides whether a failing bound id stops the run.
    """
    mu, nu = panel.mu, panel.nu
    checks: List[BoundCheck] = []
    for bound_id in bound_ids:
        get_bound_spec(bound_id)
        if bound_id == "classical-bl-tv":
            checks.append(check_classical_bl_tv(mu, nu, settings, panel))
        elif bound_id == "classical-bl-w1":
            checks.append(check_classical_bl_w1(mu, nu, settings, panel))
        elif bound_id == "wp-monotone":
            checks.extend(check_wp_monotone(mu, nu, p, q, settings, panel)
                          for p, q in WP_MONOTONE_ORDERS)
        elif bound_id == "kolmogorov-tv":
            checks.append(check_kolmogorov_tv(mu, nu, settings, panel))
        elif bound_id == "pinsker":
            checks.append(check_pinsker(mu, nu, settings, panel))
        elif bound_id == "tv-bl":
            checks.append(check_tv_bl(mu, nu, settings=settings, panel=panel))
        elif bound_id == "bhvv":
            checks.append(check_bhvv(mu, settings=settings, panel=panel))
        elif bound_id == "w1-bl":
            checks.append(check_w1_bl(mu, nu, settings=settings, panel=panel))
        elif bound_id == "wq-wp":
            inner = fitted_paouris_moment_constant(settings)
            checks.extend(check_wq_wp(mu, nu, p, q, inner_constant=inner,
                                      settings=settings, panel=panel)
                          for p, q in WQ_WP_ORDERS)
        elif bound_id in ("h-tv", "h-tv-bounded-Lf"):
            checks.append(check_h_tv(mu, bounded_isotropic_constant=bound_id != "h-tv",
                                     settings=settings, panel=panel))
        elif bound_id == "tv-bl-smoothing":
            checks.append(check_smoothing_tradeoff(
                mu, nu, fitted_eldan_klartag_constant(settings), settings=settings, panel=panel))
        elif bound_id == "w1-truncation":
            n = panel.dimension
            rate = fitted_paouris_tail_rate(settings)
            checks.extend(check_truncation_tradeoff(mu, nu, m * math.sqrt(n), rate,
                                                    settings, panel)
                          for m in settings.radius_multipliers)
        else:
            raise ValueError(f"{bound_id} is not a pair-level bound")
    return checks


# Bounds fitted on the 1-D catalog pairs
REVERSED_PAIR_BOUNDS = ("tv-bl", "w1-bl", "wq-wp")
GAUSSIAN_REFERENCE_BOUNDS = ("bhvv", "h-tv", "h-tv-bounded-Lf")
CLASSICAL_BOUNDS = ("classical-bl-tv", "classical-bl-w1", "kolmogorov-tv", "pinsker",
                    "wp-monotone")


def catalog_pair_suite(bound_ids: Sequence[str],
                       settings: NumericsSettings = DEFAULT_SETTINGS) -> List[BoundCheck]:
    """
    `bound_ids` over the 1-D catalog: pair bounds on every unordered
    pair, Gaussian-reference bounds on every member against γ₁.
    """
    pair_ids = [b for b in bound_ids if get_bound_spec(b).scope == "pair"]
    reference_ids = [b for b in bound_ids if get_bound_spec(b).scope == "gaussian-reference"]
    checks: List[BoundCheck] = []
    if pair_ids:
        for _, mu, nu in catalog_pairs_1d(settings.convolution_nodes):
            checks.extend(evaluate_pair_bounds(pair_ids, MetricPanel(mu, nu, settings), settings))
    if reference_ids:
        members = catalog_1d(settings.convolution_nodes)
        gaussian = members[0][1]
        for _, mu in members:
            checks.extend(evaluate_pair_bounds(reference_ids, MetricPanel(mu, gaussian, settings),
                                               settings))
    return checks
