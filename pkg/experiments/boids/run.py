#!/usr/bin/env python3
"""
Rand indices in the boids scenarios: complete linkage with four fixed
flocks, and normalized cut with modularity-selected k when the flocks
scatter and regroup.
"""

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from run_experiment import configure, print_table, run_and_load


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--only", choices=["fixed", "variable"], default=None)
    args = parser.parse_args()

    if args.only in (None, "fixed"):
        summary, _ = run_and_load(configure("boids-fixed", runs=args.runs, workers=args.workers))
        print_table(summary, "Boids, fixed flocks, complete linkage")

    if args.only in (None, "variable"):
        summary, metrics = run_and_load(configure("boids-variable", runs=args.runs, workers=args.workers))
        print_table(summary, "Boids, variable flocks, normalized cut")

        affect = metrics[metrics["method"] == "affect"]
        modal_k = affect.groupby("t")["k"].agg(lambda k: k.value_counts().idxmax())
        print()
        print("Modal k per step (affect): " + " ".join(str(int(k)) for k in modal_k))


if __name__ == "__main__":
    main()
