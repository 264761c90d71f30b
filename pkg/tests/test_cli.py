"""Subcommands, their outputs and exit codes."""

import pandas as pd
import pytest
import yaml

from src.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, build_parser, main

FAST_FLAGS = ["--grid-size", "256", "--mc-samples", "5000"]


@pytest.fixture
def sweep_config(tmp_path):
    path = tmp_path / "sweep.yaml"
    path.write_text(yaml.safe_dump({
        "name": "cli",
        "seed": 3,
        "metrics": ["bl", "tv", "w1"],
        "bounds": ["classical-bl-tv", "tv-bl", "w1-bl"],
        "numerics": {"convolution_nodes": 4096, "scan_nodes": 4096},
        "suite": [{"pair_id": "uniform", "mu": {"family": "uniform", "n": 1}, "t": [0.8, 0.4]}],
    }))
    return path


@pytest.fixture
def finished_sweep(sweep_config, tmp_path):
    out = tmp_path / "out"
    assert main(["sweep", str(sweep_config), "--out", str(out), *FAST_FLAGS]) == EXIT_OK
    return out


class TestCompute:
    def test_prints_value_error_and_method(self, capsys):
        assert main(["compute", "tv", "--mu", "uniform", "--nu", "gaussian"]) == EXIT_OK
        value, error, method = capsys.readouterr().out.split()[:3]
        assert 0.0 < float(value) < 2.0
        assert float(error) >= 0.0
        assert method == "quadrature"

    def test_unknown_family_is_rejected_by_the_parser(self):
        with pytest.raises(SystemExit) as info:
            main(["compute", "tv", "--mu", "cauchy"])
        assert info.value.code == 2

    @pytest.mark.parametrize("t", ["1.5", "-0.1"])
    def test_interpolation_outside_unit_interval_is_a_config_error(self, t, capsys):
        assert main(["compute", "tv", "--mu", "uniform", "--nu", "gaussian", "--t", t]) == \
            EXIT_CONFIG
        assert "config error" in capsys.readouterr().err

    def test_kolmogorov_in_two_dimensions_fails(self):
        assert main(["compute", "kolmogorov", "--n", "2", *FAST_FLAGS]) == EXIT_FAILED


class TestSweep:
    def test_writes_outputs(self, finished_sweep):
        for name in ("sweep.csv", "records.json", "fit_report.csv", "summary.txt", "envelope.svg"):
            assert (finished_sweep / name).exists()

    def test_missing_config(self, tmp_path):
        assert main(["sweep", str(tmp_path / "absent.yaml")]) == EXIT_CONFIG

    def test_invalid_config(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump({"seed": 1, "suite": []}))
        assert main(["sweep", str(path)]) == EXIT_CONFIG

    def test_unwritable_output(self, sweep_config, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("not a directory")
        assert main(["sweep", str(sweep_config), "--out", str(blocker), *FAST_FLAGS]) == EXIT_CONFIG

    def test_failed_check_exits_one(self, tmp_path):
        path = tmp_path / "tight.yaml"
        path.write_text(yaml.safe_dump({
            "seed": 1,
            "metrics": ["kolmogorov"],
            "suite": [{"pair_id": "p", "mu": {"family": "uniform", "n": 2}}],
        }))
        assert main(["sweep", str(path), "--out", str(tmp_path / "o"), *FAST_FLAGS]) == EXIT_FAILED


class TestFitAndPlot:
    def test_fit_rewrites_the_report(self, finished_sweep, tmp_path, capsys):
        target = tmp_path / "refit"
        assert main(["fit", str(finished_sweep / "records.json"), "--out", str(target)]) == EXIT_OK
        refit = pd.read_csv(target / "fit_report.csv")
        original = pd.read_csv(finished_sweep / "fit_report.csv")
        assert list(refit["key"]) == list(original["key"])
        pd.testing.assert_series_equal(refit["constant"], original["constant"])
        assert "tv-bl" in capsys.readouterr().out

    def test_fit_of_missing_records(self, tmp_path):
        assert main(["fit", str(tmp_path / "records.json")]) == EXIT_CONFIG

    def test_plot_envelope(self, finished_sweep, tmp_path):
        output = tmp_path / "envelope.svg"
        assert main(["plot-envelope", str(output),
                     "--records", str(finished_sweep / "records.json")]) == EXIT_OK
        assert output.read_text().startswith("<?xml")


class TestVerify:
    def test_closed_form_oracles(self, capsys):
        assert main(["verify", "--only", "1", "--grid-size", "512"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[PASS]  1." in out
        assert "1/1 criteria passed" in out

    def test_only_accepts_known_criteria(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["verify", "--only", "13"])
