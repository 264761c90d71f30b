"""
EXPERIMENT MODEL — DATA STRUCTURES
==================================

PURPOSE:
--------
The data structures passed between the config loader, the sweep
controller and the reporting layer.

KEY CLASSES:
------------
  • SuiteEntry:       one (μ, ν) pair of the config plus its t-grid
  • SweepPoint:       one (pair, t) task, what a worker receives
  • ExperimentConfig: the whole validated config
  • ExperimentRecord: everything computed at one sweep point

TEACHING NOTES:
---------------
These classes are contracts: the controller produces ExperimentRecords
from SweepPoints, the reporting layer only ever reads records. Records
round-trip through JSON (records.json), which is what `fit` consumes.

DEBUGGING TIPS:
---------------
  • A record's `errors` maps a metric or bound id to the message of the
    exception it raised; the rest of the record is still valid
  • `record.missing_ids(config)` lists ids that appear nowhere
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..bounds.model import BoundCheck
from ..metrics.result import MetricResult
from ..utils.settings import DEFAULT_SETTINGS, NumericsSettings


@dataclass
class SuiteEntry:
    """
    One pair of the sweep.

    `nu` None means the standard Gaussian of μ's dimension; `t` values
    interpolate μ toward that Gaussian, t = 1 being μ itself.
    """
    pair_id: str
    mu: Dict[str, Any]
    nu: Optional[Dict[str, Any]] = None
    t: List[float] = field(default_factory=lambda: [1.0])

    @property
    def dimension(self) -> int:
        return int(self.mu.get("n", 1))

    def nu_spec(self) -> Dict[str, Any]:
        if self.nu is not None:
            return self.nu
        return {"family": "gaussian", "n": self.dimension}

    def points(self) -> List["SweepPoint"]:
        return [SweepPoint(self.pair_id, float(t), self.mu, self.nu_spec()) for t in self.t]

    def to_dict(self) -> Dict[str, Any]:
        out = {"pair_id": self.pair_id, "mu": self.mu, "t": list(self.t)}
        if self.nu is not None:
            out["nu"] = self.nu
        return out


@dataclass(frozen=True)
class SweepPoint:
    """One (pair, t) task."""
    pair_id: str
    t: float
    mu: Dict[str, Any]
    nu: Dict[str, Any]

    @property
    def sort_key(self):
        return (self.pair_id, self.t)


@dataclass
class ExperimentConfig:
    """A validated sweep configuration."""
    name: str
    seed: int
    suite: List[SuiteEntry]
    metrics: List[str] = field(default_factory=list)
    bounds: List[str] = field(default_factory=list)
    numerics: NumericsSettings = DEFAULT_SETTINGS
    output_dir: str = "results"
    workers: int = 1

    @property
    def settings(self) -> NumericsSettings:
        """Numerics with the config's seed and worker count folded in."""
        return self.numerics.with_overrides({"seed": self.seed, "workers": self.workers})

    def points(self) -> List[SweepPoint]:
        points = [p for entry in self.suite for p in entry.points()]
        return sorted(points, key=lambda p: p.sort_key)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "workers": self.workers,
            "metrics": list(self.metrics),
            "bounds": list(self.bounds),
            "numerics": self.numerics.to_dict(),
            "suite": [entry.to_dict() for entry in self.suite],
        }


@dataclass
class ExperimentRecord:
    """
    Everything computed at one (pair, t) point.

    Every requested metric id lands in `metrics` or in `errors`, and
    every requested bound id has checks in `checks` or an entry in
    `errors`.
    """
    pair_id: str
    n: int
    t: float
    metrics: Dict[str, MetricResult] = field(default_factory=dict)
    checks: List[BoundCheck] = field(default_factory=list)
    errors: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    wall_time: float = 0.0

    @property
    def sort_key(self):
        return (self.pair_id, self.t)

    @property
    def failed_checks(self) -> List[BoundCheck]:
        return [c for c in self.checks if not c.holds]

    def slacks(self) -> Dict[str, float]:
        return {c.key: c.slack for c in self.checks}

    def missing_ids(self, metric_ids: List[str], bound_ids: List[str]) -> List[str]:
        bound_seen = {c.bound_id for c in self.checks}
        missing = [m for m in metric_ids if m not in self.metrics and m not in self.errors]
        missing += [b for b in bound_ids if b not in bound_seen and b not in self.errors]
        return missing

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair_id": self.pair_id,
            "n": self.n,
            "t": self.t,
            "seed": self.seed,
            "wall_time": self.wall_time,
            "metrics": {k: v.to_dict() for k, v in sorted(self.metrics.items())},
            "checks": [c.to_dict() for c in self.checks],
            "errors": dict(sorted(self.errors.items())),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], settings: NumericsSettings = DEFAULT_SETTINGS
                  ) -> "ExperimentRecord":
        return cls(
            pair_id=data["pair_id"],
            n=int(data["n"]),
            t=float(data["t"]),
            metrics={k: MetricResult.from_dict(v) for k, v in data.get("metrics", {}).items()},
            checks=[BoundCheck.from_dict(c, settings.tolerance, settings.vacuous_threshold)
                    for c in data.get("checks", [])],
            errors=dict(data.get("errors", {})),
            seed=int(data.get("seed", 0)),
            wall_time=float(data.get("wall_time", 0.0)),
        )
