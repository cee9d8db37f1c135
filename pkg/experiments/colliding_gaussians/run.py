#!/usr/bin/env python3
"""k-means Rand indices in the colliding Gaussians scenario."""

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from run_experiment import configure, print_table, run_and_load


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    config = configure("colliding", runs=args.runs, workers=args.workers)
    summary, _ = run_and_load(config)
    print_table(summary, "Colliding Gaussians, k-means")


if __name__ == "__main__":
    main()
