"""Sweep config loading, validation and export."""

import json

import pytest
import yaml

from src.utils.config_io import (
    DEFAULT_CONFIG_PATH,
    TEMPLATES_DIR,
    ConfigError,
    ExperimentConfigIO,
    config_from_dict,
    default_numerics,
    load_experiment_config,
    save_experiment_config,
)
from src.utils.settings import DEFAULT_SETTINGS


def minimal_config(**changes):
    config = {
        "name": "tiny",
        "seed": 5,
        "metrics": ["tv", "bl"],
        "bounds": ["tv-bl"],
        "suite": [{"pair_id": "u", "mu": {"family": "uniform", "n": 1}, "t": [0.5]}],
    }
    config.update(changes)
    return config


class TestValidation:
    def test_minimal_config_is_valid(self):
        assert ExperimentConfigIO.validate_config(minimal_config()) == (True, None)

    @pytest.mark.parametrize("changes, message", [
        ({"suite": []}, "suite is empty"),
        ({"seed": "abc"}, "seed must be an integer"),
        ({"colour": "blue"}, "Unknown config keys"),
        ({"metrics": ["hellinger"]}, "Unknown metric id"),
        ({"bounds": ["nope"]}, "Unknown bound id"),
        ({"bounds": ["min-lemma"]}, "lemma check"),
        ({"suite": [{"pair_id": "x", "mu": {"family": "cauchy"}}]}, "unknown family"),
        ({"suite": [{"pair_id": "x", "mu": {"family": "uniform"}, "t": [1.5]}]}, r"\[0, 1\]"),
        ({"suite": [{"pair_id": "x", "mu": {"family": "uniform", "n": 2},
                     "nu": {"family": "gaussian", "n": 3}}]}, "dimensions differ"),
        ({"suite": [{"pair_id": "x", "mu": {"family": "uniform"}},
                    {"pair_id": "x", "mu": {"family": "laplace"}}]}, "duplicate pair_id"),
    ])
    def test_invalid_configs(self, changes, message):
        ok, error = ExperimentConfigIO.validate_config(minimal_config(**changes))
        assert not ok
        with pytest.raises(ConfigError, match=message):
            config_from_dict(minimal_config(**changes))

    def test_missing_seed(self):
        config = minimal_config()
        del config["seed"]
        with pytest.raises(ConfigError, match="seed"):
            config_from_dict(config)

    def test_config_error_is_a_value_error(self):
        assert issubclass(ConfigError, ValueError)


class TestLayering:
    def test_default_numerics_come_from_the_yaml(self):
        with open(DEFAULT_CONFIG_PATH) as f:
            defaults = yaml.safe_load(f)["numerics"]
        assert default_numerics().grid_size == defaults["grid_size"]

    def test_config_numerics_then_overrides(self):
        config = config_from_dict(minimal_config(numerics={"grid_size": 256, "mc_samples": 1000}),
                                  overrides={"mc_samples": 500, "tolerance": None, "seed": 9})
        assert config.numerics.grid_size == 256
        assert config.numerics.mc_samples == 500
        assert config.numerics.tolerance == DEFAULT_SETTINGS.tolerance
        assert config.seed == 9 and config.settings.seed == 9

    def test_unknown_numerics_key(self):
        with pytest.raises(ConfigError, match="Unknown numerics setting"):
            config_from_dict(minimal_config(numerics={"grid_sise": 256}))

    def test_metrics_and_bounds_are_sorted_and_deduplicated(self):
        config = config_from_dict(minimal_config(metrics=["w1", "bl", "w1"]))
        assert config.metrics == ["bl", "w1"]

    def test_suite_expands_to_sorted_points(self):
        config = config_from_dict(minimal_config(suite=[
            {"pair_id": "b", "mu": {"family": "laplace"}, "t": [0.8, 0.2]},
            {"pair_id": "a", "mu": {"family": "uniform"}},
        ]))
        assert [(p.pair_id, p.t) for p in config.points()] == [("a", 1.0), ("b", 0.2), ("b", 0.8)]
        assert config.points()[0].nu == {"family": "gaussian", "n": 1}


class TestFiles:
    def test_every_template_loads(self):
        templates = sorted(TEMPLATES_DIR.glob("*.yaml"))
        assert templates
        for path in templates + [DEFAULT_CONFIG_PATH]:
            config = load_experiment_config(path)
            assert config.suite, path

    def test_json_round_trip(self, tmp_path):
        config = config_from_dict(minimal_config())
        path = tmp_path / "sweep.json"
        save_experiment_config(config, path, format="json")
        raw = json.loads(path.read_text())
        assert "exported_at" in raw
        loaded = load_experiment_config(path)
        assert loaded.to_dict() == config.to_dict()

    def test_yaml_round_trip(self, tmp_path):
        config = config_from_dict(minimal_config())
        path = tmp_path / "sweep.yaml"
        save_experiment_config(config, path)
        assert load_experiment_config(path).suite[0].t == [0.5]

    def test_unknown_extension(self, tmp_path):
        path = tmp_path / "sweep.toml"
        path.write_text("seed = 1\n")
        with pytest.raises(ConfigError, match="extension"):
            load_experiment_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_experiment_config(tmp_path / "absent.yaml")

    def test_non_mapping_file(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError, match="mapping"):
            load_experiment_config(path)

    def test_unknown_export_format(self, tmp_path):
        with pytest.raises(ValueError):
            save_experiment_config(config_from_dict(minimal_config()), tmp_path / "x", "xml")
