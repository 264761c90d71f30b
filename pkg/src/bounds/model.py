"""
BOUND MODEL — DATA STRUCTURES
=============================

PURPOSE:
--------
One inequality instance (BoundCheck) and the registry of every
inequality the project checks (BOUND_REGISTRY).

KEY CLASSES:
------------
  • BoundSpec:  static description of an inequality and how its
                constant is fitted
  • BoundCheck: one evaluated instance, lhs ≤ rhs

HOW A CHECK IS SCORED:
----------------------
Every check stores its left side and its "unit" right side, the right
side with the free constant set to 1. Everything else derives from them:

    fit = "multiplier":  rhs = C · unit_rhs
    fit = "none":        rhs = unit_rhs              (classical bounds)
    fit = "rate":        rhs = exp(−c · unit_rhs)    (unit_rhs = R)

    slack                = rhs − lhs
    numerical_tolerance  = max(floor, lhs_error + C · unit_rhs_error)
    vacuous              = lhs and rhs both below the vacuous threshold
    holds                = vacuous or slack ≥ −numerical_tolerance

so `holds ⇔ slack ≥ −numerical_tolerance` can never go stale when a
fitted constant is applied with `with_constant`.

DEBUGGING TIPS:
---------------
  • `ratio` is the smallest constant this single instance needs
  • A non-finite ratio with a finite lhs means unit_rhs is zero: the
    right side's metric came out as 0 while the left side did not
"""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..distributions.density import LogConcaveDensity

FIT_KINDS = ("multiplier", "none", "rate")


@dataclass(frozen=True)
class BoundSpec:
    """Static description of one inequality."""

    bound_id: str
    statement: str
    fit: str = "multiplier"
    scope: str = "pair"            # pair | gaussian-reference | density | lemma

    def __post_init__(self):
        if self.fit not in FIT_KINDS:
            raise ValueError(f"unknown fit kind {self.fit!r}")


BOUND_REGISTRY: Dict[str, BoundSpec] = {
    spec.bound_id: spec
    for spec in [
        # classical directions
        BoundSpec("classical-bl-tv", "d_BL ≤ d_TV", "none"),
        BoundSpec("classical-bl-w1", "d_BL ≤ W₁", "none"),
        BoundSpec("wp-monotone", "W_p ≤ W_q for p ≤ q", "none"),
        BoundSpec("kolmogorov-tv", "d_K ≤ ½·d_TV", "none"),
        BoundSpec("pinsker", "d_TV ≤ √(2H)", "none"),
        # reversed directions
        BoundSpec("tv-bl", "d_TV ≤ C·√(n·d_BL)"),
        BoundSpec("bhvv", "d_TV(μ,γ₁) ≤ C·√(max{1, log(1/d_K)}·d_K)", scope="gaussian-reference"),
        BoundSpec("w1-bl", "W₁ ≤ C·max{√n, log(√n/d_BL)}·d_BL"),
        BoundSpec("wq-wp", "W_q^q ≤ C·(max{√n, log((c·max{q,√n})^q/W_p^p)})^{q−p}·W_p^p"),
        BoundSpec("h-tv", "H(μ|γₙ) ≤ C·max{log²(n/d_TV), n·log(n+1)}·d_TV",
                  scope="gaussian-reference"),
        BoundSpec("h-tv-bounded-Lf", "H(μ|γₙ) ≤ C·max{log²(n/d_TV), n}·d_TV",
                  scope="gaussian-reference"),
        # intermediate steps
        BoundSpec("tv-bl-smoothing", "d_TV ≤ d_BL·max{1, 1/t} + 2·c·n·t", "none"),
        BoundSpec("w1-truncation",
                  "W₁ ≤ max{1, R}·d_BL + E‖X‖1{‖X‖≥R} + E‖Y‖1{‖Y‖≥R}", "none"),
        # ingredients
        BoundSpec("eldan-klartag", "‖f − f∗φ_t‖₁ ≤ c·n·t", scope="density"),
        BoundSpec("paouris-tail", "P[‖X‖ ≥ R] ≤ exp(−c·R)", "rate", scope="density"),
        BoundSpec("paouris-moment", "(E‖X‖^p)^{1/p} ≤ C·max{√n, p}", scope="density"),
        BoundSpec("bobkov-madiman", "Var(log f(Y)) ≤ C·n", scope="density"),
        BoundSpec("max-entropy", "Ent(μ) ≤ n·log√(2πe)", "none", scope="density"),
        BoundSpec("isotropic-constant", "‖f‖_∞^{1/n} ≤ 2⁸·√n", "none", scope="density"),
        BoundSpec("min-lemma", "inf_{t≥M} A·t^k + B·e^{−t} ≤ A·(1 + max{M, log(B/A)}^k)",
                  "none", scope="lemma"),
    ]
}

# Bound ids a sweep point (one pair) can evaluate
PAIR_BOUND_IDS = tuple(
    sorted(b for b, s in BOUND_REGISTRY.items() if s.scope in ("pair", "gaussian-reference"))
)


def get_bound_spec(bound_id: str) -> BoundSpec:
    if bound_id not in BOUND_REGISTRY:
        raise ValueError(f"Unknown bound id {bound_id!r}")
    return BOUND_REGISTRY[bound_id]


@dataclass(frozen=True)
class BoundCheck:
    """One evaluated inequality instance; see the module docstring."""

    bound_id: str
    lhs: float
    unit_rhs: float
    constant: float = 1.0
    lhs_error: float = 0.0
    unit_rhs_error: float = 0.0
    tolerance_floor: float = 1e-9
    vacuous_threshold: float = 1e-9
    variant: str = ""
    inputs: Dict[str, Any] = field(default_factory=dict)
    fitted_constant: Optional[float] = None

    @property
    def fit(self) -> str:
        return get_bound_spec(self.bound_id).fit

    @property
    def key(self) -> str:
        """bound_id plus variant, e.g. `wq-wp[p=1,q=2]`; constants are fitted per key."""
        return f"{self.bound_id}[{self.variant}]" if self.variant else self.bound_id

    @property
    def rhs(self) -> float:
        if self.fit == "multiplier":
            return self.constant * self.unit_rhs if self.unit_rhs != 0 else 0.0
        if self.fit == "rate":
            return math.exp(-self.constant * self.unit_rhs)
        return self.unit_rhs

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def numerical_tolerance(self) -> float:
        if self.fit == "multiplier":
            propagated = self.lhs_error + self.constant * self.unit_rhs_error
        elif self.fit == "rate":
            propagated = self.lhs_error
        else:
            propagated = self.lhs_error + self.unit_rhs_error
        return max(self.tolerance_floor, propagated)

    @property
    def vacuous(self) -> bool:
        if self.fit == "rate":
            return self.lhs < self.vacuous_threshold
        return (abs(self.lhs) < self.vacuous_threshold
                and abs(self.unit_rhs) < self.vacuous_threshold)

    @property
    def holds(self) -> bool:
        return self.vacuous or self.slack >= -self.numerical_tolerance

    @property
    def ratio(self) -> float:
        """Smallest constant this instance alone needs (rate: largest rate)."""
        if self.fit == "rate":
            if self.lhs <= 0:
                return math.inf
            return -math.log(self.lhs) / self.unit_rhs
        if self.unit_rhs == 0:
            return 0.0 if self.lhs <= 0 else math.inf
        return self.lhs / self.unit_rhs

    def with_constant(self, constant: float, fitted: bool = True) -> "BoundCheck":
        """Same instance re-scored with another constant."""
        return replace(self, constant=float(constant),
                       fitted_constant=float(constant) if fitted else self.fitted_constant)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bound_id": self.bound_id,
            "key": self.key,
            "variant": self.variant,
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "unit_rhs": _jsonable(self.unit_rhs),
            "constant": _jsonable(self.constant),
            "fitted_constant": _jsonable(self.fitted_constant),
            "slack": _jsonable(self.slack),
            "numerical_tolerance": self.numerical_tolerance,
            "lhs_error": self.lhs_error,
            "unit_rhs_error": _jsonable(self.unit_rhs_error),
            "holds": self.holds,
            "vacuous": self.vacuous,
            "inputs": self.inputs,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any],
                  tolerance_floor: float = 1e-9, vacuous_threshold: float = 1e-9) -> "BoundCheck":
        fitted = data.get("fitted_constant")
        return cls(
            bound_id=data["bound_id"],
            lhs=float(data["lhs"]),
            unit_rhs=float(data["unit_rhs"]),
            constant=float(data.get("constant", 1.0)),
            lhs_error=float(data.get("lhs_error", 0.0)),
            unit_rhs_error=float(data.get("unit_rhs_error", 0.0)),
            tolerance_floor=tolerance_floor,
            vacuous_threshold=vacuous_threshold,
            variant=data.get("variant", ""),
            inputs=dict(data.get("inputs", {})),
            fitted_constant=None if fitted is None else float(fitted),
        )


def _jsonable(value):
    """inf and nan become strings; json.dump would emit invalid JSON otherwise."""
    if value is None:
        return None
    value = float(value)
    if math.isfinite(value):
        return value
    return str(value)


def make_check(
    bound_id: str,
    lhs: float,
    unit_rhs: float,
    settings,
    constant: Optional[float] = None,
    lhs_error: float = 0.0,
    unit_rhs_error: float = 0.0,
    variant: str = "",
    inputs: Optional[Dict[str, Any]] = None,
) -> BoundCheck:
    """
    Build a BoundCheck. With `constant=None` a fitted bound is scored at
    its own instance ratio (the suite fit replaces it later); fixed
    bounds always use 1.
    """
    check = BoundCheck(
        bound_id=bound_id,
        lhs=float(lhs),
        unit_rhs=float(unit_rhs),
        lhs_error=float(lhs_error),
        unit_rhs_error=float(unit_rhs_error),
        tolerance_floor=settings.tolerance,
        vacuous_threshold=settings.vacuous_threshold,
        variant=variant,
        inputs=dict(inputs or {}),
    )
    if check.fit == "none":
        return check
    if constant is not None:
        return check.with_constant(constant, fitted=False)
    ratio = check.ratio
    if check.vacuous or not math.isfinite(ratio):
        return check
    return check.with_constant(ratio)


def propagate_error(shape, values: Tuple[float, ...], errors: Tuple[float, ...]) -> float:
    """
    Error of shape(*values) from perturbing each input by ± its error
    (clipped at 0); deviations of the inputs are summed.
    """
    base = shape(*values)
    if not math.isfinite(base):
        return 0.0
    total = 0.0
    for i, error in enumerate(errors):
        if error <= 0:
            continue
        worst = 0.0
        for sign in (-1.0, 1.0):
            moved = list(values)
            moved[i] = max(values[i] + sign * error, 0.0)
            shifted = shape(*moved)
            if math.isfinite(shifted):
                worst = max(worst, abs(shifted - base))
        total += worst
    return total


def require_isotropic(*densities: LogConcaveDensity) -> None:
    """Reversed bounds are stated for isotropic measures only."""
    for d in densities:
        if not d.isotropic:
            mean = np.round(d.mean_vector(), 6).tolist()
            raise ValueError(f"{d.label} is not isotropic (mean {mean}); whiten it first")
