"""
CSV outputs of a run.

    metrics.csv   run,seed,t,method,alpha,k,rand,mse
    alpha.csv     run,t,iteration,alpha,method
    summary.csv   method,mean_rand,stderr_rand,runs,mean_mse
    curves.csv    method,t,mean_rand,mean_mse,mean_alpha,modal_k,runs
    labels.csv    run,method,t,id,label   (optional)

Rows are in run order, then method order, then time order, so identical
inputs give identical files.
"""

import logging
from pathlib import Path
from typing import Dict, List

import pandas as pd

from affect.statistics.summary import step_curves, summarize_runs

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"

METRICS_COLUMNS = ["run", "seed", "t", "method", "alpha", "k", "rand", "mse"]
ALPHA_COLUMNS = ["run", "t", "iteration", "alpha", "method"]
SUMMARY_COLUMNS = ["method", "mean_rand", "stderr_rand", "runs", "mean_mse"]
CURVE_COLUMNS = ["method", "t", "mean_rand", "mean_mse", "mean_alpha", "modal_k", "runs"]
LABEL_COLUMNS = ["run", "method", "t", "id", "label"]


def _write(rows: List[dict], columns: List[str], path: Path) -> Path:
    frame = pd.DataFrame(rows, columns=columns)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def write_csv_outputs(replications, output_dir: Path, labels: bool = False) -> Dict[str, Path]:
    """
    Write the CSV files of a finished run.

    Returns
    -------
    dict
        File stem -> written path.
    """

    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)

    results = [metrics for rep in replications for metrics in rep.metrics]

    paths = {
        "metrics": _write(
            [row for m in results for row in m.rows()],
            METRICS_COLUMNS,
            output_dir / "metrics.csv",
        ),
        "alpha": _write(
            [row for m in results for row in m.alpha_rows()],
            ALPHA_COLUMNS,
            output_dir / "alpha.csv",
        ),
        "summary": _write(
            [s.as_row() for s in summarize_runs(results).values()],
            SUMMARY_COLUMNS,
            output_dir / "summary.csv",
        ),
        "curves": _write(step_curves(results), CURVE_COLUMNS, output_dir / "curves.csv"),
    }

    if labels:
        paths["labels"] = _write(
            [row for rep in replications for row in rep.labels],
            LABEL_COLUMNS,
            output_dir / "labels.csv",
        )

    for name, path in paths.items():
        logger.info(f"Wrote {name} to {path}")

    return paths
