"""
SWEEP CONTROLLER — ORCHESTRATION ENGINE
=======================================

ASCII DIAGRAM:
--------------
        ExperimentConfig
               │
               ▼
     ┌───────────────────┐
     │  1. POINTS        │  one SweepPoint per (pair, t), sorted
     └─────────┬─────────┘
               ▼
     ┌───────────────────┐
     │  2. COMPUTE       │  densities → MetricPanel → metrics + checks
     │  (serial or pool) │  failures go to record.errors
     └─────────┬─────────┘
               ▼
     ┌───────────────────┐
     │  3. FIT           │  one constant per bound key over the sweep,
     │                   │  every check re-scored with it
     └─────────┬─────────┘
               ▼
     ┌───────────────────┐
     │  4. EMIT          │  sweep.csv, records.json, fit_report.csv,
     │                   │  summary.txt, envelope.svg
     └───────────────────┘

PURPOSE:
--------
Runs a whole sweep. The controller does no numerics itself: it builds
the densities of each point, hands them to a MetricPanel and the bound
checks, and collects what comes back.

RESPONSIBILITIES:
-----------------
  1. Expand the config into sweep points
  2. Evaluate each point; record per-metric and per-bound failures
     instead of aborting (partial-failure recovery)
  3. Run independent points in a process pool when workers > 1
  4. Fit constants over the sweep and re-score every check
  5. Emit the output files in a deterministic order
  6. Report progress through `progress_callback(message, percent)`

DETERMINISM:
------------
Records are sorted by (pair_id, t) before fitting and emission, and all
randomness flows from the config seed through named substreams, so the
worker count never changes output bytes.

DEBUGGING TIPS:
---------------
  • Run with debug=True (or `--debug`) to see one [SWEEP] line per point
  • A point whose `errors` is non-empty still has every other metric
  • `get_execution_stats()` summarizes the last run
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from ..bounds.fitting import FitResult, evaluate_pair_bounds, fit_suite
from ..distributions.catalog import convolve_interpolate, density_from_spec
from ..metrics.panel import MetricPanel
from ..utils.reporting import write_outputs
from ..utils.settings import NumericsSettings
from .experiment_model import ExperimentConfig, ExperimentRecord, SweepPoint

logger = logging.getLogger(__name__)

# Exceptions a single metric or bound may raise without stopping the sweep
RECOVERABLE_ERRORS = (ValueError, RuntimeError, ArithmeticError)


def build_point_densities(point: SweepPoint, settings: NumericsSettings):
    """(μ_t, ν) of one sweep point."""
    base = density_from_spec(point.mu, settings.convolution_nodes)
    mu = convolve_interpolate(base, point.t, settings.convolution_nodes)
    nu = density_from_spec(point.nu, settings.convolution_nodes)
    return mu, nu


def evaluate_point(point: SweepPoint, metric_ids: Sequence[str], bound_ids: Sequence[str],
                   settings: NumericsSettings) -> ExperimentRecord:
    """
    All requested metrics and bound checks of one point.

    Module-level so a process pool can pickle it.
    """
    start = time.perf_counter()
    record = ExperimentRecord(pair_id=point.pair_id, n=int(point.mu.get("n", 1)), t=point.t,
                              seed=settings.seed)
    try:
        mu, nu = build_point_densities(point, settings)
        panel = MetricPanel(mu, nu, settings)
    except RECOVERABLE_ERRORS as e:
        message = f"{type(e).__name__}: {e}"
        record.errors = {item: message for item in [*metric_ids, *bound_ids]}
        record.wall_time = time.perf_counter() - start
        return record

    for metric_id in metric_ids:
        try:
            record.metrics[metric_id] = panel.get(metric_id)
        except RECOVERABLE_ERRORS as e:
            record.errors[metric_id] = f"{type(e).__name__}: {e}"

    for bound_id in bound_ids:
        try:
            record.checks.extend(evaluate_pair_bounds([bound_id], panel, settings))
        except RECOVERABLE_ERRORS as e:
            record.errors[bound_id] = f"{type(e).__name__}: {e}"

    record.wall_time = time.perf_counter() - start
    return record


class SweepController:
    """
    Pipeline orchestrator for one ExperimentConfig.

    Example:
        >>> controller = SweepController(config, debug=True)
        >>> records = controller.run(Path("results/u"))
        >>> controller.fits["tv-bl"].constant
    """

    def __init__(
        self,
        config: ExperimentConfig,
        debug: bool = False,
        progress_callback: Optional[Callable[[str, float], None]] = None,
    ):
        self.config = config
        self.settings = config.settings
        self.debug = debug
        self.progress_callback = progress_callback
        self.fits: Dict[str, FitResult] = {}
        self.records: List[ExperimentRecord] = []
        self._execution_history: List[Dict] = []

    def run(self, output_dir: Optional[Path] = None) -> List[ExperimentRecord]:
        """
        Execute the sweep; with `output_dir` also write the output files.

        Returns:
            records sorted by (pair_id, t), checks re-scored with the
            sweep-wide fitted constants
        """
        start = time.perf_counter()
        self._report_progress("Starting sweep", 0.0)

        # ═══════════════════════════════════════════════════
        # STAGE 1: POINTS
        # ═══════════════════════════════════════════════════
        points = self._stage_points()

        # ═══════════════════════════════════════════════════
        # STAGE 2: COMPUTE
        # ═══════════════════════════════════════════════════
        self._report_progress(f"Computing {len(points)} points", 10.0)
        records = self._stage_compute(points)

        # ═══════════════════════════════════════════════════
        # STAGE 3: FIT
        # ═══════════════════════════════════════════════════
        self._report_progress("Fitting constants", 80.0)
        records = self._stage_fit(records)

        # ═══════════════════════════════════════════════════
        # STAGE 4: EMIT
        # ═══════════════════════════════════════════════════
        if output_dir is not None:
            self._report_progress("Writing outputs", 90.0)
            self._stage_emit(records, Path(output_dir))

        self.records = records
        elapsed = time.perf_counter() - start
        self._execution_history.append({
            "name": self.config.name,
            "points": len(records),
            "errors": sum(len(r.errors) for r in records),
            "failed_checks": sum(len(r.failed_checks) for r in records),
            "execution_time": elapsed,
        })
        logger.info("[SWEEP] %s: %d points in %.2fs", self.config.name, len(records), elapsed)
        self._report_progress("Sweep completed", 100.0)
        return records

    def _stage_points(self) -> List[SweepPoint]:
        points = self.config.points()
        logger.info("[SWEEP] %d points from %d suite entries", len(points), len(self.config.suite))
        return points

    def _stage_compute(self, points: List[SweepPoint]) -> List[ExperimentRecord]:
        metrics, bounds = self.config.metrics, self.config.bounds
        records: List[ExperimentRecord] = []

        if self.settings.workers > 1 and len(points) > 1:
            logger.info("[SWEEP] running on %d worker processes", self.settings.workers)
            with ProcessPoolExecutor(max_workers=self.settings.workers) as pool:
                futures = [pool.submit(evaluate_point, p, metrics, bounds, self.settings)
                           for p in points]
                for i, future in enumerate(futures):
                    records.append(future.result())
                    self._point_done(records[-1], i, len(points))
        else:
            for i, point in enumerate(points):
                records.append(evaluate_point(point, metrics, bounds, self.settings))
                self._point_done(records[-1], i, len(points))

        return sorted(records, key=lambda r: r.sort_key)

    def _point_done(self, record: ExperimentRecord, index: int, total: int):
        if self.debug:
            logger.info("[SWEEP] %s t=%g: %d metrics, %d checks, %d errors (%.2fs)",
                        record.pair_id, record.t, len(record.metrics), len(record.checks),
                        len(record.errors), record.wall_time)
        for key, message in sorted(record.errors.items()):
            logger.warning("[SWEEP] %s t=%g: %s failed: %s", record.pair_id, record.t, key, message)
        self._report_progress(f"{record.pair_id} t={record.t:g}",
                              10.0 + 70.0 * (index + 1) / max(total, 1))

    def _stage_fit(self, records: List[ExperimentRecord]) -> List[ExperimentRecord]:
        """Fit one constant per key over all records and re-score every check."""
        all_checks = [c for r in records for c in r.checks]
        if not all_checks:
            self.fits = {}
            return records
        self.fits = fit_suite(all_checks)
        constants = {key: fit.constant for key, fit in self.fits.items()
                     if fit.constant is not None}
        for record in records:
            record.checks = [c.with_constant(constants[c.key]) if c.key in constants else c
                             for c in record.checks]
        for key, fit in self.fits.items():
            logger.info("[FIT] %s: constant=%s, %d/%d vacuous, %d failures",
                        key, fit.constant, fit.vacuous_count, fit.instance_count, fit.failures)
        return records

    def _stage_emit(self, records: List[ExperimentRecord], output_dir: Path):
        written = write_outputs(output_dir, records, self.fits, self.config.metrics,
                                self.config.name)
        for path in written:
            logger.info("[SWEEP] wrote %s", path)

    def _report_progress(self, message: str, percent: float):
        """Report progress to callback if configured."""
        if self.progress_callback:
            self.progress_callback(message, percent)
        elif self.debug:
            logger.info("[PROGRESS] %s (%.0f%%)", message, percent)

    def get_execution_stats(self) -> Dict:
        """Statistics over the runs of this controller."""
        if not self._execution_history:
            return {"total_runs": 0, "avg_execution_time": 0.0}
        times = [h["execution_time"] for h in self._execution_history]
        return {
            "total_runs": len(self._execution_history),
            "last_run": self._execution_history[-1],
            "avg_execution_time": sum(times) / len(times),
        }


def sweep_succeeded(records: Sequence[ExperimentRecord]) -> bool:
    """No recorded errors and every check holds."""
    return all(not r.errors and not r.failed_checks for r in records)


# Convenience function for one-off sweeps
def run_sweep(config: ExperimentConfig, output_dir: Optional[Path] = None,
              debug: bool = False) -> List[ExperimentRecord]:
    """
    Run a sweep with a fresh controller.

    Example:
        >>> records = run_sweep(load_experiment_config(Path("sweep.yaml")))
    """
    if not config.suite:
        raise ValueError("empty suite: nothing to sweep")
    return SweepController(config, debug=debug).run(output_dir)
