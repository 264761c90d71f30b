"""
EXPERIMENT CONFIG IMPORT/EXPORT
===============================

PURPOSE:
--------
Reads sweep configurations from YAML or JSON, validates them, and turns
them into ExperimentConfig objects; writes them back for sharing and
versioning.

Supports:
  • YAML (human-readable, git-friendly; the templates use it)
  • JSON (programmatic; the same schema)

NUMERICS LAYERING:
------------------
  NumericsSettings defaults
    ← `numerics:` block of src/config/default_sweep.yaml
    ← `numerics:` block of the config file
    ← CLI overrides (--seed, --mc-samples, --grid-size, --tolerance)

DEBUGGING TIPS:
---------------
  • ConfigError messages name the offending key and suite entry
  • `validate_config` can be called on a plain dict before loading
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml

from ..bounds.model import BOUND_REGISTRY, get_bound_spec
from ..distributions.catalog import FAMILIES
from ..metrics.panel import METRIC_IDS
from ..pipeline.experiment_model import ExperimentConfig, SuiteEntry
from .settings import DEFAULT_SETTINGS, NumericsSettings

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "default_sweep.yaml"
TEMPLATES_DIR = DEFAULT_CONFIG_PATH.parent / "sweep_templates"

# Keys the loader understands; anything else is a typo
KNOWN_KEYS = {"name", "seed", "metrics", "bounds", "numerics", "output_dir", "workers", "suite"}


class ConfigError(ValueError):
    """A config file that cannot be run."""


class ExperimentConfigIO:
    """Import/export of sweep configs as YAML or JSON."""

    @staticmethod
    def export_to_yaml(config: Dict[str, Any], file_path: Path) -> None:
        """
        Write a config dict to YAML, with an export timestamp.

        Example:
            >>> ExperimentConfigIO.export_to_yaml(config.to_dict(), Path("my_sweep.yaml"))
        """
        export_config = {"exported_at": datetime.now().isoformat(), **config}
        with open(file_path, "w") as f:
            yaml.safe_dump(export_config, f, default_flow_style=False, sort_keys=False)

    @staticmethod
    def import_from_yaml(file_path: Path) -> Dict[str, Any]:
        try:
            with open(file_path, "r") as f:
                config = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(f"cannot read {file_path}: {e}") from e
        return _strip_metadata(config, file_path)

    @staticmethod
    def export_to_json(config: Dict[str, Any], file_path: Path) -> None:
        export_config = {"exported_at": datetime.now().isoformat(), **config}
        with open(file_path, "w") as f:
            json.dump(export_config, f, indent=2)

    @staticmethod
    def import_from_json(file_path: Path) -> Dict[str, Any]:
        try:
            with open(file_path, "r") as f:
                config = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read {file_path}: {e}") from e
        return _strip_metadata(config, file_path)

    @staticmethod
    def validate_config(config: Dict[str, Any]) -> Tuple[bool, Optional[str]]:
        """
        Validate a config dict.

        Returns:
            (is_valid, error_message)
        """
        unknown = sorted(set(config) - KNOWN_KEYS)
        if unknown:
            return False, f"Unknown config keys: {unknown}"
        if "seed" not in config:
            return False, "Missing required field: seed"
        if isinstance(config["seed"], bool) or not isinstance(config["seed"], int):
            return False, f"seed must be an integer, got {config['seed']!r}"

        suite = config.get("suite")
        if not suite:
            return False, "suite is empty: nothing to sweep"
        if not isinstance(suite, list):
            return False, "suite must be a list of pair entries"

        for metric_id in config.get("metrics") or []:
            if metric_id not in METRIC_IDS:
                return False, f"Unknown metric id {metric_id!r}; expected one of {METRIC_IDS}"
        for bound_id in config.get("bounds") or []:
            if bound_id not in BOUND_REGISTRY:
                return False, f"Unknown bound id {bound_id!r}"
            if get_bound_spec(bound_id).scope not in ("pair", "gaussian-reference"):
                return False, f"{bound_id} is a lemma check, not a pair bound; use `verify`"

        seen = set()
        for i, entry in enumerate(suite):
            ok, message = _validate_entry(entry, i)
            if not ok:
                return False, message
            if entry["pair_id"] in seen:
                return False, f"duplicate pair_id {entry['pair_id']!r}"
            seen.add(entry["pair_id"])
        return True, None


def _strip_metadata(config: Any, file_path: Path) -> Dict[str, Any]:
    if not isinstance(config, dict):
        raise ConfigError(f"{file_path} does not hold a mapping")
    config.pop("exported_at", None)
    config.pop("version", None)
    return config


def _validate_density_spec(spec: Any, where: str) -> Tuple[bool, Optional[str]]:
    if not isinstance(spec, dict):
        return False, f"{where} must be a mapping with a `family`"
    family = str(spec.get("family", "")).lower()
    if family not in FAMILIES:
        return False, f"{where}: unknown family {spec.get('family')!r}; expected one of {FAMILIES}"
    n = spec.get("n", 1)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        return False, f"{where}: n must be a positive integer, got {n!r}"
    return True, None


def _validate_entry(entry: Any, index: int) -> Tuple[bool, Optional[str]]:
    where = f"suite[{index}]"
    if not isinstance(entry, dict) or "pair_id" not in entry:
        return False, f"{where} needs a pair_id"
    where = f"suite[{index}] ({entry['pair_id']})"
    if "mu" not in entry:
        return False, f"{where} needs `mu`"
    for side in ("mu", "nu"):
        if side in entry and entry[side] is not None:
            ok, message = _validate_density_spec(entry[side], f"{where}.{side}")
            if not ok:
                return False, message
    if entry.get("nu") is not None and entry["nu"].get("n", 1) != entry["mu"].get("n", 1):
        return False, f"{where}: mu and nu dimensions differ"
    t_values = entry.get("t", [1.0])
    if not isinstance(t_values, list) or not t_values:
        return False, f"{where}: t must be a nonempty list"
    for t in t_values:
        if isinstance(t, bool) or not isinstance(t, (int, float)) or not 0.0 <= t <= 1.0:
            return False, f"{where}: t values must lie in [0, 1], got {t!r}"
    return True, None


def default_numerics() -> NumericsSettings:
    """NumericsSettings with the default_sweep.yaml `numerics:` block applied."""
    try:
        with open(DEFAULT_CONFIG_PATH, "r") as f:
            defaults = yaml.safe_load(f) or {}
    except OSError:
        logger.warning("default config %s not found; using built-in numerics", DEFAULT_CONFIG_PATH)
        return DEFAULT_SETTINGS
    return DEFAULT_SETTINGS.with_overrides(defaults.get("numerics") or {})


def config_from_dict(config: Dict[str, Any],
                     overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """
    Validate a config dict and build the ExperimentConfig.

    `overrides` are NumericsSettings keys (None values are skipped);
    a `seed` override replaces the config's seed.
    """
    overrides = dict(overrides or {})
    if overrides.get("seed") is not None:
        config = {**config, "seed": int(overrides["seed"])}

    ok, message = ExperimentConfigIO.validate_config(config)
    if not ok:
        raise ConfigError(message)

    try:
        numerics = default_numerics().with_overrides(config.get("numerics") or {})
        numerics = numerics.with_overrides(overrides)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    workers = int(config.get("workers", numerics.workers))
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")

    suite = [
        SuiteEntry(
            pair_id=str(entry["pair_id"]),
            mu=dict(entry["mu"]),
            nu=dict(entry["nu"]) if entry.get("nu") is not None else None,
            t=[float(t) for t in entry.get("t", [1.0])],
        )
        for entry in config["suite"]
    ]
    return ExperimentConfig(
        name=str(config.get("name", "sweep")),
        seed=int(config["seed"]),
        suite=suite,
        metrics=sorted(set(config.get("metrics") or [])),
        bounds=sorted(set(config.get("bounds") or [])),
        numerics=numerics,
        output_dir=str(config.get("output_dir", "results")),
        workers=workers,
    )


def load_experiment_config(path: Path, overrides: Optional[Dict[str, Any]] = None
                           ) -> ExperimentConfig:
    """
    Load and validate a sweep config; the format follows the extension.

    Raises:
        ConfigError: unreadable file, unknown extension or invalid content
    """
    path = Path(path)
    io = ExperimentConfigIO()
    if path.suffix in (".yaml", ".yml"):
        raw = io.import_from_yaml(path)
    elif path.suffix == ".json":
        raw = io.import_from_json(path)
    else:
        raise ConfigError(f"Unknown config extension {path.suffix!r}; use .yaml, .yml or .json")
    logger.debug("loaded config %s with %d suite entries", path, len(raw.get("suite") or []))
    return config_from_dict(raw, overrides)


def save_experiment_config(config: ExperimentConfig, path: Path, format: str = "yaml") -> None:
    """Write a config as YAML or JSON."""
    io = ExperimentConfigIO()
    if format == "yaml":
        io.export_to_yaml(config.to_dict(), Path(path))
    elif format == "json":
        io.export_to_json(config.to_dict(), Path(path))
    else:
        raise ValueError(f"Unknown format: {format}")
