"""Output tables, the summary and the records file."""

import math

import pandas as pd
import pytest

from src.bounds.fitting import fit_suite
from src.bounds.model import BoundCheck
from src.metrics.result import MetricResult
from src.pipeline.experiment_model import ExperimentRecord
from src.utils.reporting import (
    envelope_scatter,
    fit_report,
    fit_report_table,
    load_records_json,
    summary_text,
    sweep_table,
    write_outputs,
    write_records_json,
    write_sweep_csv,
)


def result(value):
    return MetricResult(value, 1e-9, "quadrature")


@pytest.fixture
def records():
    return [
        ExperimentRecord(
            pair_id="uniform", n=1, t=0.8,
            metrics={"w1": result(0.05), "bl": result(0.04), "tv": result(0.12)},
            checks=[BoundCheck("tv-bl", 0.12, 0.2), BoundCheck("pinsker", 0.12, 0.3)],
            seed=1),
        ExperimentRecord(
            pair_id="laplace2", n=2, t=0.4,
            metrics={"tv": result(0.08)},
            checks=[BoundCheck("tv-bl", 0.08, 0.1)],
            errors={"bl": "ValueError: boom"},
            seed=1),
    ]


class TestSweepTable:
    def test_columns_and_order(self, records):
        table = sweep_table(records, ["w1", "tv", "bl"])
        assert list(table.columns) == ["pair_id", "n", "t", "bl", "tv", "w1",
                                       "slack:pinsker", "slack:tv-bl"]
        assert list(table["pair_id"]) == ["laplace2", "uniform"]

    def test_missing_values_are_empty_cells(self, records, tmp_path):
        path = write_sweep_csv(records, ["bl", "tv"], tmp_path / "sweep.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "pair_id,n,t,bl,tv,slack:pinsker,slack:tv-bl"
        assert lines[1].startswith("laplace2,2,0.4,,0.08,,")
        assert "\r" not in path.read_text()


class TestFitReport:
    def test_columns_and_status(self, records):
        fits = fit_report(records)
        table = fit_report_table(fits)
        assert list(table["key"]) == ["pinsker", "tv-bl"]
        assert list(table["status"]) == ["classical", "fitted"]
        tv_bl = table.set_index("key").loc["tv-bl"]
        assert tv_bl["constant"] == pytest.approx(0.8)
        assert tv_bl["instances"] == 2 and tv_bl["tight"] == "true"
        assert "slack_q50" in table.columns

    def test_vacuous_key(self):
        table = fit_report_table(fit_suite([BoundCheck("w1-bl", 0.0, 0.0)]))
        row = table.iloc[0]
        assert row["status"] == "vacuous" and math.isnan(row["constant"])

    def test_given_constants(self, records):
        fits = fit_report(records, constants={"tv-bl": 0.5})
        assert fits["tv-bl"].failures == 2

    def test_no_records(self):
        with pytest.raises(ValueError):
            fit_report([])


class TestSummary:
    def test_errors_fail_the_run(self, records):
        text = summary_text(records, fit_report(records), "demo")
        assert text.startswith("SWEEP SUMMARY: demo")
        assert "laplace2 t=0.4 bl: ValueError: boom" in text
        assert text.rstrip().endswith("RESULT: FAILED")

    def test_clean_run(self, records):
        clean = [r for r in records if not r.errors]
        assert summary_text(clean, fit_report(clean)).rstrip().endswith("RESULT: OK")


class TestRecordsFile:
    def test_round_trip(self, records, tmp_path):
        path = write_records_json(records, tmp_path / "records.json")
        loaded = load_records_json(path)
        assert [r.pair_id for r in loaded] == ["laplace2", "uniform"]
        assert loaded[0].errors == {"bl": "ValueError: boom"}
        assert loaded[1].metrics["w1"].value == 0.05
        assert loaded[1].slacks() == pytest.approx(records[0].slacks())

    def test_rejects_a_mapping(self, tmp_path):
        path = tmp_path / "records.json"
        path.write_text("{}")
        with pytest.raises(ValueError, match="list of records"):
            load_records_json(path)


def test_envelope_scatter_uses_one_dimensional_records(records):
    assert envelope_scatter(records) == [(0.04, 0.05)]


def test_write_outputs(records, tmp_path):
    out = tmp_path / "nested" / "run"
    written = write_outputs(out, records, fit_report(records), ["bl", "tv", "w1"], "demo")
    assert [p.name for p in written] == ["sweep.csv", "records.json", "fit_report.csv",
                                         "summary.txt", "envelope.svg"]
    assert len(pd.read_csv(out / "sweep.csv")) == 2


def test_no_envelope_without_w1(records, tmp_path):
    written = write_outputs(tmp_path, records, fit_report(records), ["tv"])
    assert "envelope.svg" not in [p.name for p in written]
