"""
NUMERICS SETTINGS
=================

PURPOSE:
--------
One dataclass carrying every numerical knob: quadrature tolerances, grid
sizes, Monte-Carlo sample counts, the master seed, bound-check tolerances
and the lemma grids.

The defaults mirror src/config/default_sweep.yaml. Config files override
them under a `numerics:` block, CLI flags override both.

DEBUGGING TIPS:
---------------
  • If a 1-D metric misses its 1e-7 target, tighten quad_epsabs first
  • If a fitted constant moves a lot between runs, raise mc_samples
"""

from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Tuple


@dataclass(frozen=True)
class NumericsSettings:
    """Numerical configuration shared by metrics, bounds and the harness."""

    quad_epsabs: float = 1e-12
    quad_epsrel: float = 1e-10
    quad_limit: int = 400

    grid_size: int = 4096               # d_BL dual LP nodes
    convolution_nodes: int = 16384      # numerical convolution grids
    scan_nodes: int = 65536             # Kolmogorov dense scan
    support_epsilon: float = 1e-12      # effective-support truncation

    mc_samples: int = 200_000
    seed: int = 0

    tolerance: float = 1e-9             # slack floor for bound checks
    vacuous_threshold: float = 1e-9     # both sides below this → vacuous

    t_grid: Tuple[float, ...] = (0.4, 0.2, 0.1, 0.05)
    radius_multipliers: Tuple[float, ...] = (3.0, 4.0, 5.0)
    paouris_dimensions: Tuple[int, ...] = (1, 2, 4, 8, 16)
    moment_orders: Tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)

    workers: int = 1

    def with_overrides(self, overrides: Dict[str, Any]) -> "NumericsSettings":
        """
        Return a copy with the given keys replaced.

        Unknown keys raise ValueError so a typo in a config file is loud.
        None values are ignored (that is how unset CLI flags arrive).
        """
        known = {f.name: f for f in fields(self)}
        updates = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise ValueError(f"Unknown numerics setting: {key}")
            default = getattr(self, key)
            if isinstance(default, tuple):
                value = tuple(type(default[0])(v) for v in value) if default else tuple(value)
            elif isinstance(default, bool):
                value = bool(value)
            elif isinstance(default, int):
                value = int(value)
            elif isinstance(default, float):
                value = float(value)
            updates[key] = value

        updated = replace(self, **updates)
        updated.validate()
        return updated

    def validate(self):
        """Raise ValueError on settings no computation could honour."""
        if self.grid_size < 16:
            raise ValueError(f"grid_size must be >= 16, got {self.grid_size}")
        if self.mc_samples < 1:
            raise ValueError(f"mc_samples must be >= 1, got {self.mc_samples}")
        if not 0.0 < self.support_epsilon < 0.5:
            raise ValueError(f"support_epsilon must lie in (0, 0.5), got {self.support_epsilon}")
        if self.tolerance < 0 or self.vacuous_threshold < 0:
            raise ValueError("tolerance and vacuous_threshold must be nonnegative")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def to_dict(self) -> Dict[str, Any]:
        """Plain-dict form (tuples become lists) for JSON/YAML dumps."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out


DEFAULT_SETTINGS = NumericsSettings()
