#!/usr/bin/env python3
"""
Shared driver for the experiment scripts: run a preset with overrides and
return its per-method summary and metrics table.
"""

import sys
from dataclasses import replace
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import pandas as pd

# --------------------------------------------------
# Ensure project root is on PYTHONPATH
# --------------------------------------------------
ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT))

from affect.baselines import MethodSpec
from affect.cli import execute
from affect.config import RunConfig, load_preset
from affect.monte_carlo.engine import setup_logging

RESULTS = ROOT / "results"


def configure(
    preset: str,
    runs: Optional[int] = None,
    methods: Optional[Sequence[str]] = None,
    out: Optional[Path] = None,
    workers: Optional[int] = None,
    **scenario: object
) -> RunConfig:
    """Preset with replication, method and scenario overrides."""
    config = load_preset(preset)
    config = config.with_overrides(runs=runs, output_dir=out or RESULTS / preset, workers=workers)

    if methods is not None:
        config = replace(config, methods=tuple(MethodSpec.parse(m) for m in methods))

    if scenario:
        source = config.scenario
        if source.gmm is not None:
            source = replace(source, gmm=replace(source.gmm, **scenario))
        else:
            source = replace(source, boids=replace(source.boids, **scenario))
        config = replace(config, scenario=source)

    return config


def run_and_load(config: RunConfig) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Execute a configuration and read back summary.csv and metrics.csv."""
    setup_logging(config.logging_enabled)
    paths: Dict[str, Path] = execute(config)
    return pd.read_csv(paths["summary"]), pd.read_csv(paths["metrics"])


def print_table(summary: pd.DataFrame, title: str) -> None:
    print("=" * 60)
    print(title)
    print("=" * 60)
    print(f"{'Method':<18}{'Rand':<10}{'Std. error':<12}{'MSE'}")
    for row in summary.itertuples():
        mse = "" if pd.isna(row.mean_mse) else f"{row.mean_mse:.4g}"
        rand = "" if pd.isna(row.mean_rand) else f"{row.mean_rand:.3f}"
        stderr = "" if pd.isna(row.stderr_rand) else f"{row.stderr_rand:.3f}"
        print(f"{row.method:<18}{rand:<10}{stderr:<12}{mse}")
