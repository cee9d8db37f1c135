#!/usr/bin/env python3
"""
Write one replicate of a configured scenario as CSV files.

    step_NNNN.csv      observed proximity matrix
    labels_NNNN.csv    ground-truth memberships
    oracle_NNNN.csv    true proximity matrix      (Gaussian mixtures only)
    variance_NNNN.csv  noise variances            (Gaussian mixtures only)

A csv scenario pointed at the output directory replays the replicate, and
with the same base seed reproduces the in-process metrics of run 0.
"""

import argparse
import sys
from pathlib import Path

# --------------------------------------------------
# Ensure project root is on PYTHONPATH
# --------------------------------------------------
PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(PROJECT_ROOT))

from affect.config import load_config, load_preset
from affect.monte_carlo.engine import SCENARIO_STREAM, get_scenario_backend, replicate_rng
from affect.proximity.io import step_file, write_labels, write_matrix


def dump(config, run: int, out_dir: Path) -> int:
    backend = get_scenario_backend(config.scenario)
    steps = backend.generate(replicate_rng(config.seed, run, SCENARIO_STREAM))

    out_dir.mkdir(parents=True, exist_ok=True)
    for step in steps:
        write_matrix(step_file(out_dir, step.t), step.matrix)
        if step.truth is not None:
            write_labels(step_file(out_dir, step.t, prefix="labels"), step.truth)
        if step.oracle_psi is not None:
            write_matrix(step_file(out_dir, step.t, prefix="oracle"), step.oracle_psi)
        if step.oracle_var is not None:
            write_matrix(
                step_file(out_dir, step.t, prefix="variance"),
                step.oracle_psi.with_values(step.oracle_var),
            )

    return len(steps)


def main():
    parser = argparse.ArgumentParser(description="Dump one scenario replicate to CSV")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path)
    source.add_argument("--preset")
    parser.add_argument("--run", type=int, default=0, help="Replicate index")
    parser.add_argument("--seed", type=int, default=None, help="Override the base seed")
    parser.add_argument("--out", type=Path, required=True, help="Output directory")
    args = parser.parse_args()

    config = load_preset(args.preset) if args.preset else load_config(args.config)
    config = config.with_overrides(seed=args.seed)

    count = dump(config, args.run, args.out)
    print(f"[INFO] Wrote {count} steps of replicate {args.run} to {args.out}")


if __name__ == "__main__":
    main()
