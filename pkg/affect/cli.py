"""
Command-line entry point.

    affect run --config FILE [--runs N] [--seed S] [--out DIR] [--workers W]
    affect run --preset NAME [...]
    affect ingest --dir PATH --kind similarity|dissimilarity

Exit codes: 0 on success, 2 on configuration errors, 3 on runtime errors.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from affect.config import RunConfig, load_config, load_preset
from affect.errors import AffectError, ConfigError
from affect.monte_carlo.engine import run_replications, setup_logging
from affect.proximity.io import ingest
from affect.reporting.csv_report import write_csv_outputs
from affect.reporting.text_report import RunReportGenerator
from affect.statistics.summary import summarize_runs

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

logger = logging.getLogger(__name__)


# ------------------------------------------------------------
# CLI argument parsing
# ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affect",
        description="Adaptive evolutionary clustering experiment runner"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run replicated tracking experiments")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path, help="Path to run configuration YAML")
    source.add_argument("--preset", help="Name of a preset in configs/presets")
    run.add_argument("--runs", type=int, default=None, help="Override the number of replicates")
    run.add_argument("--seed", type=int, default=None, help="Override the base seed")
    run.add_argument("--out", type=Path, default=None, help="Override the output directory")
    run.add_argument("--workers", type=int, default=None, help="Parallel replicate workers")

    ing = commands.add_parser("ingest", help="Validate a directory of step_NNNN.csv matrices")
    ing.add_argument("--dir", required=True, type=Path, help="Sequence directory")
    ing.add_argument(
        "--kind",
        required=True,
        choices=["similarity", "dissimilarity"],
        help="Proximity kind of the matrices"
    )

    return parser


# ------------------------------------------------------------
# Commands
# ------------------------------------------------------------

def execute(config: RunConfig) -> Dict[str, Path]:
    """Run every replicate and write all result files."""

    replications = run_replications(config)

    paths = write_csv_outputs(replications, config.output_dir, labels=config.write_labels)

    results = [metrics for rep in replications for metrics in rep.metrics]
    report = RunReportGenerator(config.output_dir).generate({
        "scenario": config.scenario.type,
        "clusterer": config.clusterer.build().describe(),
        "runs": config.runs,
        "seed": config.seed,
        "summary": summarize_runs(results),
    })
    paths["report"] = report
    logger.info(f"Report written to {report}")

    return paths


def _run(args: argparse.Namespace) -> int:
    config = load_preset(args.preset) if args.preset else load_config(args.config)
    config = config.with_overrides(
        runs=args.runs, seed=args.seed, output_dir=args.out, workers=args.workers
    )

    setup_logging(config.logging_enabled)
    logger.info(f"Base seed {config.seed}, {config.runs} replicate(s), output in {config.output_dir}")

    execute(config)
    return EXIT_OK


def _ingest(args: argparse.Namespace) -> int:
    setup_logging(True)
    sequence = ingest(args.dir, kind=args.kind)

    previous = None
    for t, matrix in enumerate(sequence):
        ids = set(matrix.ids)
        change = ""
        if previous is not None:
            change = f" (+{len(ids - previous)} / -{len(previous - ids)})"
        print(f"step {t:4d}: {matrix.n} objects{change}")
        previous = ids

    return EXIT_OK


# ------------------------------------------------------------
# Entry point
# ------------------------------------------------------------

def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)

    try:
        if args.command == "run":
            return _run(args)
        return _ingest(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AffectError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
