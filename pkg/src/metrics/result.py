"""
METRIC RESULT
=============

One computed distance: the value, an estimate of its numerical or
statistical error, how it was computed, and whether it is the quantity
itself or only a bound on it.

KINDS:
------
  • exact: value approximates the metric to within abs_error
  • upper: value is an upper bound (e.g. product-coupling W_p in n-D)
  • lower: value is a lower bound (e.g. finitely many d_BL test functions)

An infinite relative entropy is an ordinary result with value = inf,
built by `MetricResult.infinite(...)`, so sweeps can record it.
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict

from scipy import stats

# Two-sided 95% normal quantile for Monte-Carlo bands
Z_95 = float(stats.norm.ppf(0.975))

METHODS = (
    "quadrature",
    "quantile-quadrature",
    "grid-LP",
    "monte-carlo",
    "closed-form",
)
KINDS = ("exact", "upper", "lower")


@dataclass(frozen=True)
class MetricResult:
    """A computed distance with its error estimate and provenance."""

    value: float
    abs_error: float
    method: str
    detail: str = ""
    kind: str = "exact"

    def __post_init__(self):
        value = float(self.value)
        abs_error = float(self.abs_error)
        if math.isnan(value) or value < 0:
            raise ValueError(f"metric value must be nonnegative, got {value}")
        if math.isnan(abs_error) or abs_error < 0:
            raise ValueError(f"abs_error must be nonnegative, got {abs_error}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.kind not in KINDS:
            raise ValueError(f"unknown result kind {self.kind!r}")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "abs_error", abs_error)

    @classmethod
    def infinite(cls, detail: str, method: str = "quadrature") -> "MetricResult":
        """The distinguished +inf result (relative entropy off the support)."""
        return cls(math.inf, 0.0, method, detail)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def format_line(self) -> str:
        """`value abs_error method detail`, as the CLI prints it."""
        return f"{self.value:.12g} {self.abs_error:.3g} {self.method} {self.detail}".rstrip()

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        if self.is_infinite:
            out["value"] = "inf"
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MetricResult":
        return cls(
            value=float(data["value"]),
            abs_error=float(data["abs_error"]),
            method=data["method"],
            detail=data.get("detail", ""),
            kind=data.get("kind", "exact"),
        )


def monte_carlo_half_width(std: float, count: int) -> float:
    """95% normal-approximation half-width of a sample mean."""
    return Z_95 * float(std) / math.sqrt(max(int(count), 1))
