"""
COMMAND-LINE SURFACE
====================

  python -m src.cli compute tv --mu uniform --nu gaussian
  python -m src.cli compute w2 --mu laplace --n 2 --t 0.4
  python -m src.cli sweep src/config/sweep_templates/interpolation_uniform.yaml --out results/u
  python -m src.cli fit results/u/records.json
  python -m src.cli plot-envelope envelope.svg --records results/u/records.json
  python -m src.cli verify --only 1 4 5

Shared flags: --seed, --mc-samples, --grid-size, --tolerance, --debug.

EXIT CODES:
-----------
  0  success
  1  a bound check failed beyond tolerance, or a metric/bound recorded
     an error, or an acceptance criterion failed
  2  config problem: invalid file, unknown family, unwritable output
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .distributions.catalog import FAMILIES, convolve_interpolate, density_from_spec
from .metrics.panel import METRIC_IDS, MetricPanel
from .pipeline.acceptance import AcceptanceSuite
from .pipeline.sweep_controller import SweepController, sweep_succeeded
from .utils.config_io import ConfigError, default_numerics, load_experiment_config
from .utils.log_setup import configure_logging
from .utils.plotting import plot_envelope
from .utils.reporting import (
    envelope_scatter,
    fit_report,
    fit_report_table,
    load_records_json,
    summary_text,
    write_fit_report,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def _numerics_overrides(args: argparse.Namespace) -> Dict[str, Optional[float]]:
    return {
        "seed": args.seed,
        "mc_samples": args.mc_samples,
        "grid_size": args.grid_size,
        "tolerance": args.tolerance,
    }


def _settings(args: argparse.Namespace):
    try:
        return default_numerics().with_overrides(_numerics_overrides(args))
    except ValueError as e:
        raise ConfigError(str(e)) from e


# ═══════════════════════════════════════════════════════════════
# SUBCOMMANDS
# ═══════════════════════════════════════════════════════════════

def cmd_compute(args: argparse.Namespace) -> int:
    settings = _settings(args)
    try:
        base = density_from_spec({"family": args.mu, "n": args.n}, settings.convolution_nodes)
        nu = density_from_spec({"family": args.nu, "n": args.n}, settings.convolution_nodes)
        mu = convolve_interpolate(base, args.t, settings.convolution_nodes)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    result = MetricPanel(mu, nu, settings).get(args.metric)
    print(result.format_line())
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    config = load_experiment_config(Path(args.config), _numerics_overrides(args))
    output_dir = Path(args.out or config.output_dir)
    controller = SweepController(config, debug=args.debug)
    try:
        records = controller.run(output_dir)
    except OSError as e:
        raise ConfigError(f"cannot write outputs to {output_dir}: {e}") from e
    print(summary_text(records, controller.fits, config.name), end="")
    return EXIT_OK if sweep_succeeded(records) else EXIT_FAILED


def cmd_fit(args: argparse.Namespace) -> int:
    settings = _settings(args)
    records_path = Path(args.records)
    try:
        records = load_records_json(records_path, settings)
    except (OSError, ValueError, KeyError) as e:
        raise ConfigError(f"cannot read records from {records_path}: {e}") from e
    fits = fit_report(records)
    output_dir = Path(args.out) if args.out else records_path.parent
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        path = write_fit_report(fits, output_dir / "fit_report.csv")
    except OSError as e:
        raise ConfigError(f"cannot write fit report to {output_dir}: {e}") from e
    table = fit_report_table(fits)
    if not table.empty:
        print(table[["key", "status", "constant", "instances", "failures", "tight"]]
              .to_string(index=False))
    logger.info("wrote %s", path)
    return EXIT_OK if all(f.failures == 0 for f in fits.values()) else EXIT_FAILED


def cmd_plot_envelope(args: argparse.Namespace) -> int:
    scatter, constant = None, None
    if args.records:
        records = load_records_json(Path(args.records), _settings(args))
        scatter = envelope_scatter(records)
        fits = fit_report(records)
        if "w1-bl" in fits:
            constant = fits["w1-bl"].constant
    output = Path(args.output)
    try:
        plot_envelope(output, scatter=scatter, constant=constant)
    except OSError as e:
        raise ConfigError(f"cannot write {output}: {e}") from e
    print(output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    suite = AcceptanceSuite(_settings(args), debug=args.debug)
    results = suite.run(args.only)
    for result in results:
        print(result.format_line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_FAILED


# ═══════════════════════════════════════════════════════════════
# PARSER
# ═══════════════════════════════════════════════════════════════

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="master random seed")
    common.add_argument("--mc-samples", type=int, default=None, help="Monte-Carlo sample count")
    common.add_argument("--grid-size", type=int, default=None, help="d_BL dual LP grid size")
    common.add_argument("--tolerance", type=float, default=None, help="bound slack floor")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--debug", action="store_true", help="verbose stage logging")

    parser = argparse.ArgumentParser(
        prog="logconcave-metrics",
        description="Probability metrics and comparison inequalities for isotropic "
                    "log-concave measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[common], help="one metric for one pair")
    compute.add_argument("metric", choices=METRIC_IDS)
    compute.add_argument("--mu", choices=FAMILIES, default="uniform")
    compute.add_argument("--nu", choices=FAMILIES, default="gaussian")
    compute.add_argument("--n", type=int, default=1, help="dimension")
    compute.add_argument("--t", type=float, default=1.0,
                         help="interpolate mu toward the standard Gaussian (1 = mu itself)")
    compute.set_defaults(handler=cmd_compute)

    sweep = sub.add_parser("sweep", parents=[common], help="run a sweep config")
    sweep.add_argument("config", help="YAML or JSON sweep config")
    sweep.set_defaults(handler=cmd_sweep)

    fit = sub.add_parser("fit", parents=[common], help="fit constants from stored records")
    fit.add_argument("records", help="records.json written by `sweep`")
    fit.set_defaults(handler=cmd_fit)

    plot = sub.add_parser("plot-envelope", parents=[common], help="write the envelope SVG")
    plot.add_argument("output", help="target .svg path")
    plot.add_argument("--records", default=None, help="overlay the points of a records.json")
    plot.set_defaults(handler=cmd_plot_envelope)

    verify = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    verify.add_argument("--only", type=int, nargs="+", default=None,
                        choices=sorted(AcceptanceSuite.TITLES), help="criterion numbers")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.debug)
    try:
        return args.handler(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
