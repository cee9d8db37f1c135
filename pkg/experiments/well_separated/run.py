#!/usr/bin/env python3
"""
Tracking MSE of the adaptive, oracle and constant forgetting factors in the
well-separated Gaussians scenario, averaged over steps 5 and later.
"""

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from run_experiment import configure, print_table, run_and_load

FIRST_STEP = 5


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    config = configure("well-separated", runs=args.runs, workers=args.workers)
    summary, metrics = run_and_load(config)
    print_table(summary, "Well-separated Gaussians, k-means")

    late = metrics[metrics["t"] >= FIRST_STEP]
    mse = late.groupby("method", sort=False)["mse"].mean()

    print()
    print(f"Mean MSE over steps {FIRST_STEP}..{int(metrics['t'].max())}:")
    for method, value in mse.items():
        ratio = value / mse["oracle"] if "oracle" in mse else float("nan")
        print(f"  {method:<16}{value:10.3f}   x{ratio:.3f} of oracle")


if __name__ == "__main__":
    main()
