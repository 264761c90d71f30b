"""
COMPARISON INEQUALITIES
=======================

PURPOSE:
--------
Checks of the classical and the reversed comparisons between metrics,
one BoundCheck per call. Metrics come from a MetricPanel, so a sweep
point that checks several bounds computes each metric once.

  classical                       reversed (isotropic log-concave only)
  ─────────                       ─────────────────────────────────────
  d_BL ≤ d_TV                     d_TV ≤ C·√(n·d_BL)
  d_BL ≤ W₁                       W₁ ≤ C·max{√n, log(√n/d_BL)}·d_BL
  W_p ≤ W_q  (p ≤ q)              W_q^q ≤ C·(max{√n, log(...)})^{q−p}·W_p^p
  d_K ≤ ½·d_TV                    d_TV(μ,γ₁) ≤ C·√(max{1, log(1/d_K)}·d_K)
  d_TV ≤ √(2H)                    H(μ|γₙ) ≤ C·max{log²(n/d_TV), n·log(n+1)}·d_TV

In n-D, d_BL is the lower end of its sandwich. A classical check then
never fails because of the sandwich gap, and a reversed bound fitted on
it gets a constant at least as large as the true d_BL would need.

TEACHING NOTES:
---------------
Each `*_shape` function is the right side with C = 1. The checks pass
the shape and its inputs' errors to `propagate_error`, which yields the
right side's share of the numerical tolerance.
"""

import math
from typing import Optional

from ..distributions.catalog import make_standard_gaussian
from ..distributions.density import LogConcaveDensity
from ..metrics.panel import MetricPanel
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings
from .model import BoundCheck, make_check, propagate_error, require_isotropic

# (p, q) orders checked by default
WQ_WP_ORDERS = ((1.0, 2.0), (1.0, 4.0), (2.0, 4.0))
WP_MONOTONE_ORDERS = ((1.0, 2.0), (2.0, 4.0))


def _panel(mu, nu, settings, panel: Optional[MetricPanel]) -> MetricPanel:
    if panel is not None:
        return panel
    return MetricPanel(mu, nu, settings)


def _gaussian_panel(mu, settings, panel: Optional[MetricPanel]) -> MetricPanel:
    """Panel of (μ, γₙ); `panel` is reused when its ν already is γₙ."""
    if panel is not None and panel.mu is mu and is_standard_gaussian(panel.nu):
        return panel
    return MetricPanel(mu, make_standard_gaussian(mu.dimension), settings)


def is_standard_gaussian(d: LogConcaveDensity) -> bool:
    return d.structure == "gaussian" and d.isotropic


def _inputs(panel: MetricPanel, **extra):
    inputs = {"mu": panel.mu.label, "nu": panel.nu.label, "n": panel.dimension}
    inputs.update(extra)
    return inputs


# ═══════════════════════════════════════════════════════════════
# SHAPES (right sides at C = 1)
# ═══════════════════════════════════════════════════════════════

def tv_bl_shape(n: int, d_bl: float) -> float:
    return math.sqrt(n * max(d_bl, 0.0))


def bhvv_shape(d_k: float) -> float:
    if d_k <= 0:
        return 0.0
    return math.sqrt(max(1.0, math.log(1.0 / d_k)) * d_k)


def w1_bl_shape(n: int, d_bl: float) -> float:
    if d_bl <= 0:
        return 0.0
    root_n = math.sqrt(n)
    return max(root_n, math.log(root_n / d_bl)) * d_bl


def wq_wp_shape(n: int, p: float, q: float, w_p: float, inner_constant: float) -> float:
    if w_p <= 0:
        return 0.0
    root_n = math.sqrt(n)
    w_p_power = w_p ** p
    log_term = q * math.log(inner_constant * max(q, root_n)) - math.log(w_p_power)
    return max(root_n, log_term) ** (q - p) * w_p_power


def h_tv_shape(n: int, d_tv: float, bounded_isotropic_constant: bool = False) -> float:
    if d_tv <= 0:
        return 0.0
    dimension_term = n if bounded_isotropic_constant else n * math.log(n + 1)
    return max(math.log(n / d_tv) ** 2, dimension_term) * d_tv


# ═══════════════════════════════════════════════════════════════
# CLASSICAL DIRECTIONS
# ═══════════════════════════════════════════════════════════════

def check_classical_bl_tv(mu, nu, settings: NumericsSettings = DEFAULT_SETTINGS,
                          panel: Optional[MetricPanel] = None) -> BoundCheck:
    """d_BL ≤ d_TV; in n-D the lhs is the lower end of the d_BL sandwich."""
    panel = _panel(mu, nu, settings, panel)
    bl, tv = panel.bl(), panel.tv()
    return make_check("classical-bl-tv", bl.value, tv.value, settings,
                      lhs_error=bl.abs_error, unit_rhs_error=tv.abs_error,
                      inputs=_inputs(panel))


def check_classical_bl_w1(mu, nu, settings: NumericsSettings = DEFAULT_SETTINGS,
                          panel: Optional[MetricPanel] = None) -> BoundCheck:
    """d_BL ≤ W₁; in n-D the lhs is the lower end of the d_BL sandwich."""
    panel = _panel(mu, nu, settings, panel)
    bl, w1 = panel.bl(), panel.wasserstein(1.0)
    return make_check("classical-bl-w1", bl.value, w1.value, settings,
                      lhs_error=bl.abs_error, unit_rhs_error=w1.abs_error,
                      inputs=_inputs(panel))


def check_wp_monotone(mu, nu, p: float, q: float,
                      settings: NumericsSettings = DEFAULT_SETTINGS,
                      panel: Optional[MetricPanel] = None) -> BoundCheck:
    """W_p ≤ W_q."""
    if not q >= p >= 1:
        raise ValueError(f"wp-monotone needs 1 <= p <= q, got p={p}, q={q}")
    panel = _panel(mu, nu, settings, panel)
    w_p, w_q = panel.wasserstein(p), panel.wasserstein(q)
    return make_check("wp-monotone", w_p.value, w_q.value, settings,
                      lhs_error=w_p.abs_error, unit_rhs_error=w_q.abs_error,
                      variant=f"p={p:g},q={q:g}", inputs=_inputs(panel, p=p, q=q))


def check_kolmogorov_tv(mu, nu, settings: NumericsSettings = DEFAULT_SETTINGS,
                        panel: Optional[MetricPanel] = None) -> BoundCheck:
    """d_K ≤ ½·d_TV (1-D)."""
    panel = _panel(mu, nu, settings, panel)
    d_k, tv = panel.kolmogorov(), panel.tv()
    return make_check("kolmogorov-tv", d_k.value, 0.5 * tv.value, settings,
                      lhs_error=d_k.abs_error, unit_rhs_error=0.5 * tv.abs_error,
                      inputs=_inputs(panel))


def check_pinsker(mu, nu, settings: NumericsSettings = DEFAULT_SETTINGS,
                  panel: Optional[MetricPanel] = None) -> BoundCheck:
    """d_TV ≤ √(2H); holds trivially when H is infinite."""
    panel = _panel(mu, nu, settings, panel)
    tv, kl = panel.tv(), panel.kl()
    rhs = math.inf if kl.is_infinite else math.sqrt(2.0 * kl.value)
    rhs_error = 0.0 if kl.is_infinite else propagate_error(
        lambda h: math.sqrt(2.0 * h), (kl.value,), (kl.abs_error,))
    return make_check("pinsker", tv.value, rhs, settings,
                      lhs_error=tv.abs_error, unit_rhs_error=rhs_error,
                      inputs=_inputs(panel))


# ═══════════════════════════════════════════════════════════════
# REVERSED DIRECTIONS
# ═══════════════════════════════════════════════════════════════

def check_tv_bl(mu, nu, constant: Optional[float] = None,
                settings: NumericsSettings = DEFAULT_SETTINGS,
                panel: Optional[MetricPanel] = None) -> BoundCheck:
    """d_TV ≤ C·√(n·d_BL)."""
    require_isotropic(mu, nu)
    panel = _panel(mu, nu, settings, panel)
    n = panel.dimension
    tv, bl = panel.tv(), panel.bl()
    shape = lambda d: tv_bl_shape(n, d)  # noqa: E731
    return make_check("tv-bl", tv.value, shape(bl.value), settings, constant,
                      lhs_error=tv.abs_error,
                      unit_rhs_error=propagate_error(shape, (bl.value,), (bl.abs_error,)),
                      inputs=_inputs(panel, d_bl=bl.value, d_tv=tv.value))


def check_bhvv(mu, constant: Optional[float] = None,
               settings: NumericsSettings = DEFAULT_SETTINGS,
               panel: Optional[MetricPanel] = None) -> BoundCheck:
    """d_TV(μ, γ₁) ≤ C·√(max{1, log(1/d_K)}·d_K) for 1-D μ."""
    if mu.dimension != 1:
        raise ValueError("bhvv is a one-dimensional bound")
    panel = _gaussian_panel(mu, settings, panel)
    tv, d_k = panel.tv(), panel.kolmogorov()
    return make_check("bhvv", tv.value, bhvv_shape(d_k.value), settings, constant,
                      lhs_error=tv.abs_error,
                      unit_rhs_error=propagate_error(bhvv_shape, (d_k.value,), (d_k.abs_error,)),
                      inputs=_inputs(panel, d_k=d_k.value, d_tv=tv.value))


def check_w1_bl(mu, nu, constant: Optional[float] = None,
                settings: NumericsSettings = DEFAULT_SETTINGS,
                panel: Optional[MetricPanel] = None) -> BoundCheck:
    """W₁ ≤ C·max{√n, log(√n/d_BL)}·d_BL; d_BL = 0 with W₁ ≈ 0 is vacuous."""
    require_isotropic(mu, nu)
    panel = _panel(mu, nu, settings, panel)
    n = panel.dimension
    w1, bl = panel.wasserstein(1.0), panel.bl()
    shape = lambda d: w1_bl_shape(n, d)  # noqa: E731
    return make_check("w1-bl", w1.value, shape(bl.value), settings, constant,
                      lhs_error=w1.abs_error,
                      unit_rhs_error=propagate_error(shape, (bl.value,), (bl.abs_error,)),
                      inputs=_inputs(panel, d_bl=bl.value, w1=w1.value))


def check_wq_wp(mu, nu, p: float, q: float, constant: Optional[float] = None,
                inner_constant: float = 1.0,
                settings: NumericsSettings = DEFAULT_SETTINGS,
                panel: Optional[MetricPanel] = None) -> BoundCheck:
    """
    W_q^q ≤ C·(max{√n, log((c·max{q,√n})^q / W_p^p)})^{q−p}·W_p^p.

    `inner_constant` is c, normally the fitted paouris-moment constant.
    In n-D W_q is exact only at q = 2 (additivity over coordinates);
    other q are upper bounds and the check is indicative there.
    """
    if not q > p >= 1:
        raise ValueError(f"wq-wp needs 1 <= p < q, got p={p}, q={q}")
    require_isotropic(mu, nu)
    panel = _panel(mu, nu, settings, panel)
    n = panel.dimension
    w_p, w_q = panel.wasserstein(p), panel.wasserstein(q)
    lhs = w_q.value ** q
    lhs_error = q * w_q.value ** (q - 1) * w_q.abs_error if w_q.value > 0 else 0.0
    shape = lambda w: wq_wp_shape(n, p, q, w, inner_constant)  # noqa: E731
    return make_check("wq-wp", lhs, shape(w_p.value), settings, constant,
                      lhs_error=lhs_error,
                      unit_rhs_error=propagate_error(shape, (w_p.value,), (w_p.abs_error,)),
                      variant=f"p={p:g},q={q:g}",
                      inputs=_inputs(panel, p=p, q=q, inner_constant=inner_constant,
                                     exact_lhs=w_q.kind == "exact",
                                     monotone=w_p.value <= w_q.value + w_p.abs_error + w_q.abs_error))


def check_h_tv(mu, constant: Optional[float] = None, bounded_isotropic_constant: bool = False,
               settings: NumericsSettings = DEFAULT_SETTINGS,
               panel: Optional[MetricPanel] = None) -> BoundCheck:
    """
    H(μ|γₙ) ≤ C·max{log²(n/d_TV), n·log(n+1)}·d_TV.

    With `bounded_isotropic_constant` the n·log(n+1) term becomes n
    (bound id h-tv-bounded-Lf). An infinite H holds only if the right
    side is infinite, which it never is: such a record fails.
    """
    require_isotropic(mu)
    panel = _gaussian_panel(mu, settings, panel)
    n = panel.dimension
    kl, tv = panel.kl(), panel.tv()
    bound_id = "h-tv-bounded-Lf" if bounded_isotropic_constant else "h-tv"
    shape = lambda d: h_tv_shape(n, d, bounded_isotropic_constant)  # noqa: E731
    return make_check(bound_id, kl.value, shape(tv.value), settings, constant,
                      lhs_error=kl.abs_error,
                      unit_rhs_error=propagate_error(shape, (tv.value,), (tv.abs_error,)),
                      inputs=_inputs(panel, d_tv=tv.value, h=kl.to_dict()["value"]))
