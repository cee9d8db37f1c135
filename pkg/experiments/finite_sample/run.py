#!/usr/bin/env python3
"""
Gap between the estimated and the oracle forgetting factor over the last
ten steps of the well-separated scenario, for 40 and 200 objects.
"""

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[1]))

from run_experiment import RESULTS, configure, run_and_load

LAST_STEPS = 10


def alpha_gap(metrics) -> float:
    horizon = int(metrics["t"].max())
    tail = metrics[metrics["t"] > horizon - LAST_STEPS]
    wide = tail.pivot_table(index=["run", "t"], columns="method", values="alpha")
    return float((wide["affect"] - wide["oracle"]).abs().mean())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=20)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    for n in (40, 200):
        config = configure(
            "well-separated",
            runs=args.runs,
            workers=args.workers,
            methods=["affect", "oracle"],
            out=RESULTS / f"finite-sample-n{n}",
            n=n,
        )
        _, metrics = run_and_load(config)
        print(f"n={n:4d}: mean |alpha - alpha*| over the last {LAST_STEPS} steps = {alpha_gap(metrics):.4f}")


if __name__ == "__main__":
    main()
