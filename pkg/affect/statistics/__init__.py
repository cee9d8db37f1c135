"""Aggregation of run metrics across replications."""

from affect.statistics.summary import MethodSummary, step_curves, summarize_runs

__all__ = ["MethodSummary", "step_curves", "summarize_runs"]
