"""
Per-method summaries across replications.

A method's score in one run is its mean Rand index over all time steps
(t = 0 included). The summary reports the mean of these run scores and
their standard error across runs, plus the mean per-step MSE.
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

import numpy as np

from affect.metrics.run_metrics import RunMetrics


@dataclass(frozen=True)
class MethodSummary:
    method: str
    runs: int
    mean_rand: Optional[float]
    stderr_rand: Optional[float]
    mean_mse: Optional[float]

    def as_row(self) -> dict:
        return {
            "method": self.method,
            "runs": self.runs,
            "mean_rand": self.mean_rand,
            "stderr_rand": self.stderr_rand,
            "mean_mse": self.mean_mse,
        }


def _mean_and_stderr(values: List[float]):
    if not values:
        return None, None
    arr = np.array(values, dtype=float)
    stderr = float(arr.std(ddof=1) / math.sqrt(arr.size)) if arr.size > 1 else 0.0
    return float(arr.mean()), stderr


def summarize_runs(results: Iterable[RunMetrics]) -> Dict[str, MethodSummary]:
    """
    Build per-method statistics from the runs of every method.

    Returns
    -------
    dict
        method -> MethodSummary, in first-seen method order.
    """

    # --------------------------------------------------
    # Aggregate run scores per method
    # --------------------------------------------------
    rand_per_method = defaultdict(list)
    mse_per_method = defaultdict(list)
    runs_per_method = Counter()

    for run in results:
        runs_per_method[run.method] += 1

        rand = run.rand_values()
        if rand.size:
            rand_per_method[run.method].append(float(rand.mean()))

        mse = run.mse_values()
        if mse.size:
            mse_per_method[run.method].append(float(mse.mean()))

    # --------------------------------------------------
    # Compute statistics
    # --------------------------------------------------
    summary = {}

    for method, runs in runs_per_method.items():
        mean_rand, stderr_rand = _mean_and_stderr(rand_per_method[method])
        mean_mse, _ = _mean_and_stderr(mse_per_method[method])

        summary[method] = MethodSummary(
            method=method,
            runs=runs,
            mean_rand=mean_rand,
            stderr_rand=stderr_rand,
            mean_mse=mean_mse,
        )

    return summary


def _nanmean(values: List[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None and not math.isnan(v)]
    return float(np.mean(present)) if present else None


def step_curves(results: Iterable[RunMetrics]) -> List[dict]:
    """
    Per-method, per-step means across runs.

    Rows carry method, t, mean_rand, mean_mse, mean_alpha, modal_k and the
    number of runs that reached the step. The modal k breaks ties toward the
    smaller k.
    """

    cells = defaultdict(lambda: {"rand": [], "mse": [], "alpha": [], "k": []})
    order: List[str] = []

    for run in results:
        if run.method not in order:
            order.append(run.method)
        for step in run.per_step:
            cell = cells[(run.method, step.t)]
            cell["rand"].append(step.rand)
            cell["mse"].append(step.mse)
            cell["alpha"].append(step.alpha)
            cell["k"].append(step.k)

    rows = []
    for method in order:
        steps = sorted(t for (m, t) in cells if m == method)
        for t in steps:
            cell = cells[(method, t)]
            counts = Counter(cell["k"])
            top = max(counts.values())
            rows.append({
                "method": method,
                "t": t,
                "mean_rand": _nanmean(cell["rand"]),
                "mean_mse": _nanmean(cell["mse"]),
                "mean_alpha": _nanmean(cell["alpha"]),
                "modal_k": min(k for k, c in counts.items() if c == top),
                "runs": len(cell["k"]),
            })

    return rows
