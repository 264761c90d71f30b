"""
SWEEP REPORTING
===============

PURPOSE:
--------
Turns sweep records and fit results into the output files:

  sweep.csv        one row per (pair_id, t)
  records.json     full records, the input of `fit`
  fit_report.csv   one row per bound key
  summary.txt      plain-text overview
  envelope.svg     W₁ vs d_BL over the fitted envelope (1-D points)

CSV LAYOUT:
-----------
  pair_id, n, t, <metric ids alphabetically>, slack:<bound keys alphabetically>

Floats are written with "%.12g"; a metric that failed at a point is an
empty cell and its message lives in records.json. Rows are sorted by
(pair_id, t), so the same records always give the same bytes.
"""

import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import pandas as pd

from ..bounds.fitting import FitResult, fit_suite
from ..pipeline.experiment_model import ExperimentRecord
from .plotting import plot_envelope
from .settings import DEFAULT_SETTINGS, NumericsSettings

FLOAT_FORMAT = "%.12g"
SLACK_PREFIX = "slack:"
SLACK_QUANTILES = (0.0, 0.25, 0.5, 0.75, 1.0)


# ═══════════════════════════════════════════════════════════════
# SWEEP TABLE
# ═══════════════════════════════════════════════════════════════

def sweep_table(records: Sequence[ExperimentRecord], metric_ids: Iterable[str]) -> pd.DataFrame:
    metric_ids = sorted(set(metric_ids))
    slack_keys = sorted({c.key for r in records for c in r.checks})
    rows = []
    for record in sorted(records, key=lambda r: r.sort_key):
        row = {"pair_id": record.pair_id, "n": record.n, "t": record.t}
        for metric_id in metric_ids:
            result = record.metrics.get(metric_id)
            row[metric_id] = result.value if result is not None else float("nan")
        slacks = record.slacks()
        for key in slack_keys:
            row[SLACK_PREFIX + key] = slacks.get(key, float("nan"))
        rows.append(row)
    columns = ["pair_id", "n", "t", *metric_ids, *(SLACK_PREFIX + k for k in slack_keys)]
    return pd.DataFrame(rows, columns=columns)


def write_sweep_csv(records: Sequence[ExperimentRecord], metric_ids: Iterable[str],
                    path: Path) -> Path:
    sweep_table(records, metric_ids).to_csv(path, index=False, float_format=FLOAT_FORMAT,
                                            lineterminator="\n")
    return path


# ═══════════════════════════════════════════════════════════════
# FIT REPORT
# ═══════════════════════════════════════════════════════════════

def _status(fit: FitResult) -> str:
    if fit.all_vacuous:
        return "vacuous"
    if fit.fit == "none":
        return "classical"
    return "fitted"


def fit_report_table(fits: Dict[str, FitResult]) -> pd.DataFrame:
    """Per key: constant, status, argmax instance and slack quantiles."""
    rows = []
    for key in sorted(fits):
        fit = fits[key]
        slacks = pd.Series(fit.slacks, dtype=float)
        slacks = slacks[slacks.map(math.isfinite)] if len(slacks) else slacks
        row = {
            "key": key,
            "bound_id": fit.bound_id,
            "fit": fit.fit,
            "status": _status(fit),
            "constant": fit.constant if fit.constant is not None else float("nan"),
            "instances": fit.instance_count,
            "vacuous": fit.vacuous_count,
            "failures": fit.failures,
            "tight": "" if fit.tight is None else str(fit.tight).lower(),
            "argmax_ratio": fit.argmax_ratio if fit.argmax_ratio is not None else float("nan"),
            "argmax_instance": json.dumps(fit.argmax_inputs, sort_keys=True, default=str),
        }
        for q in SLACK_QUANTILES:
            row[f"slack_q{int(q * 100):02d}"] = (float(slacks.quantile(q)) if len(slacks)
                                                 else float("nan"))
        rows.append(row)
    return pd.DataFrame(rows)


def fit_report(records: Sequence[ExperimentRecord],
               constants: Optional[Dict[str, float]] = None) -> Dict[str, FitResult]:
    """Re-fit the checks of stored records (the `fit` subcommand)."""
    if not records:
        raise ValueError("fit_report needs at least one record")
    checks = [c for r in records for c in r.checks]
    return fit_suite(checks, constants) if checks else {}


def write_fit_report(fits: Dict[str, FitResult], path: Path) -> Path:
    fit_report_table(fits).to_csv(path, index=False, float_format=FLOAT_FORMAT,
                                  lineterminator="\n")
    return path


# ═══════════════════════════════════════════════════════════════
# SUMMARY AND RECORDS
# ═══════════════════════════════════════════════════════════════

def summary_text(records: Sequence[ExperimentRecord], fits: Dict[str, FitResult],
                 name: str = "sweep") -> str:
    failed = [(r, c) for r in records for c in r.failed_checks]
    errors = [(r, k, m) for r in records for k, m in sorted(r.errors.items())]
    lines = [
        f"SWEEP SUMMARY: {name}",
        "=" * (15 + len(name)),
        f"points:         {len(records)}",
        f"checks:         {sum(len(r.checks) for r in records)}",
        f"failed checks:  {len(failed)}",
        f"errors:         {len(errors)}",
        "",
        "FITTED CONSTANTS",
        "----------------",
    ]
    for key in sorted(fits):
        fit = fits[key]
        status = _status(fit)
        if status == "fitted":
            value = f"{fit.constant:.6g}" + ("" if fit.tight is None else f"  tight={fit.tight}")
        else:
            value = status
        lines.append(f"  {key:<28} {value}  ({fit.instance_count} instances, "
                     f"{fit.vacuous_count} vacuous, {fit.failures} failures)")
    if failed:
        lines += ["", "FAILED CHECKS", "-------------"]
        for record, check in failed:
            lines.append(f"  {record.pair_id} t={record.t:g} {check.key}: "
                         f"slack={check.slack:.6g} tolerance={check.numerical_tolerance:.3g}")
    if errors:
        lines += ["", "ERRORS", "------"]
        for record, key, message in errors:
            lines.append(f"  {record.pair_id} t={record.t:g} {key}: {message}")
    verdict = "OK" if not failed and not errors else "FAILED"
    lines += ["", f"RESULT: {verdict}", ""]
    return "\n".join(lines)


def write_records_json(records: Sequence[ExperimentRecord], path: Path) -> Path:
    with open(path, "w") as f:
        json.dump([r.to_dict() for r in sorted(records, key=lambda r: r.sort_key)], f, indent=2)
        f.write("\n")
    return path


def load_records_json(path: Path, settings: NumericsSettings = DEFAULT_SETTINGS
                      ) -> List[ExperimentRecord]:
    with open(path, "r") as f:
        data = json.load(f)
    if not isinstance(data, list):
        raise ValueError(f"{path} does not hold a list of records")
    return [ExperimentRecord.from_dict(item, settings) for item in data]


def envelope_scatter(records: Sequence[ExperimentRecord]) -> List[tuple]:
    """(d_BL, W₁) of the one-dimensional records that have both."""
    points = []
    for record in records:
        if record.n == 1 and "bl" in record.metrics and "w1" in record.metrics:
            points.append((record.metrics["bl"].value, record.metrics["w1"].value))
    return points


def write_outputs(output_dir: Path, records: Sequence[ExperimentRecord],
                  fits: Dict[str, FitResult], metric_ids: Iterable[str],
                  name: str = "sweep") -> List[Path]:
    """
    Write every sweep output into `output_dir` (created if needed).

    Raises:
        OSError: the directory cannot be created or written
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    metric_ids = list(metric_ids)
    written = [
        write_sweep_csv(records, metric_ids, output_dir / "sweep.csv"),
        write_records_json(records, output_dir / "records.json"),
        write_fit_report(fits, output_dir / "fit_report.csv"),
    ]
    summary_path = output_dir / "summary.txt"
    summary_path.write_text(summary_text(records, fits, name))
    written.append(summary_path)

    if "bl" in metric_ids and "w1" in metric_ids:
        w1_fit = fits.get("w1-bl")
        constant = w1_fit.constant if w1_fit is not None and w1_fit.constant else None
        written.append(plot_envelope(output_dir / "envelope.svg",
                                     scatter=envelope_scatter(records), constant=constant))
    return written
