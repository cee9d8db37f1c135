"""Clustering accuracy, tracking error and cross-step cluster matching."""

from affect.metrics.rand import rand_index
from affect.metrics.tracking_error import mse
from affect.metrics.matching import hungarian, match_clusters, match_to_previous
from affect.metrics.run_metrics import RunMetrics, StepMetrics

__all__ = [
    "RunMetrics",
    "StepMetrics",
    "hungarian",
    "match_clusters",
    "match_to_previous",
    "mse",
    "rand_index",
]
