"""
Replication engine.

This module runs every configured method over independent replicates of
a scenario and collects their per-step metrics.

Responsibilities:
- Instantiate the scenario backend and the clusterer
- Derive a seed stream per replicate
- Run each method over the same replicate
- Track running means of the per-run Rand index

This module must NOT:
- write output files
- parse command-line arguments

Seed streams: replicate r of a run with base seed s draws from
Philox(SeedSequence([s, r, stream])), with stream 0 for the scenario,
1 for the PCQ training replicate and 2 for clusterer seeds. The same
(s, r) therefore reproduces the same replicate in any process.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

import numpy as np
from joblib import Parallel, delayed

from affect.baselines import MethodSpec, run_baseline, run_tracker, train_pcq_alpha
from affect.config import RunConfig, ScenarioConfig
from affect.errors import ConfigError
from affect.metrics.run_metrics import RunMetrics
from affect.monte_carlo.accumulator import RunningStats
from affect.proximity.matrix import ClusterAssignment
from affect.tracking.affect import AffectTracker

SCENARIO_STREAM = 0
TRAINING_STREAM = 1
CLUSTERER_STREAM = 2

logger = logging.getLogger(__name__)


# ------------------------------------------------------------
# Utility functions
# ------------------------------------------------------------

def setup_logging(enable: bool) -> None:
    """Configure logging."""
    if enable:
        logging.basicConfig(
            level=logging.INFO,
            format="%(asctime)s [%(levelname)s] %(message)s"
        )
    else:
        logging.basicConfig(level=logging.WARNING)


def replicate_rng(seed: int, run: int, stream: int = SCENARIO_STREAM) -> np.random.Generator:
    """Counter-based generator of one replicate's stream."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, run, stream])))


def replicate_seed(seed: int, run: int, stream: int = CLUSTERER_STREAM) -> int:
    """Integer seed for libraries that take one."""
    return int(np.random.SeedSequence([seed, run, stream]).generate_state(1)[0])


# ------------------------------------------------------------
# Backend factory
# ------------------------------------------------------------

def get_scenario_backend(scenario: ScenarioConfig):
    """
    Instantiate the scenario backend of a configuration.

    Raises
    ------
    ValueError
        If the scenario type is not supported.
    """

    if scenario.type == "gmm":
        from sim.backends.gmm import GmmBackend
        return GmmBackend(scenario.gmm)

    if scenario.type == "boids":
        from sim.backends.boids import BoidsBackend
        return BoidsBackend(scenario.boids, proximity=scenario.proximity, rho=scenario.rho)

    if scenario.type == "csv":
        from sim.backends.csv_replay import CsvReplayBackend
        return CsvReplayBackend(scenario.csv_dir, kind=scenario.kind)

    raise ValueError(f"Unsupported scenario: {scenario.type}")


# ------------------------------------------------------------
# One replicate
# ------------------------------------------------------------

@dataclass
class Replication:
    run: int
    seed: int
    metrics: List[RunMetrics] = field(default_factory=list)
    labels: List[dict] = field(default_factory=list)


def _label_rows(method: str, run: int, assignments: List[Tuple[int, ClusterAssignment]]) -> List[dict]:
    rows = []
    for t, assignment in assignments:
        for obj, label in zip(assignment.ids, assignment.labels.tolist()):
            rows.append({"run": run, "method": method, "t": t, "id": obj, "label": label})
    return rows


def run_method(
    method: MethodSpec,
    steps: list,
    config: RunConfig,
    backend,
    run: int
) -> Tuple[RunMetrics, List[Tuple[int, ClusterAssignment]]]:
    """Run one method over the replicate ``steps``."""

    seed = replicate_seed(config.seed, run)
    clusterer = config.clusterer.build(seed)
    assignments: List[Tuple[int, ClusterAssignment]] = []

    if method.kind == "affect":
        options = config.affect
        if method.iterations is not None:
            options = replace(options, iterations=method.iterations)
        tracker = AffectTracker(clusterer, options)
        metrics = run_tracker(
            lambda matrix, t: tracker.step(matrix),
            steps, method.label, run, config.seed, assignments,
        )
        return metrics, assignments

    if method.kind == "oracle":
        from sim.backends.oracle import oracle_alpha_run

        if steps and steps[-1].oracle_var is None:
            raise ConfigError("The oracle method needs true proximities and noise variances")
        alphas = oracle_alpha_run(steps)
        tracker = AffectTracker(clusterer, config.affect)
        metrics = run_tracker(
            lambda matrix, t: tracker.step(matrix, alpha=alphas[t - 1] if t else None),
            steps, method.label, run, config.seed, assignments,
        )
        return metrics, assignments

    alpha = None
    if method.trained:
        training = backend.generate(replicate_rng(config.seed, run, TRAINING_STREAM))
        alpha = train_pcq_alpha(training, clusterer)
        logger.debug(f"run={run} {method.label}: trained alpha={alpha:.2f}")

    metrics = run_baseline(
        method.baseline(alpha), steps, clusterer,
        method=method.label, run=run, seed=config.seed, assignments=assignments,
    )
    return metrics, assignments


def run_replication(config: RunConfig, run: int) -> Replication:
    """Generate replicate ``run`` and run every method on it."""

    backend = get_scenario_backend(config.scenario)
    steps = backend.generate(replicate_rng(config.seed, run, SCENARIO_STREAM))
    if not config.mse:
        steps = [replace(step, oracle_psi=None) for step in steps]

    result = Replication(run=run, seed=config.seed)
    for method in config.methods:
        metrics, assignments = run_method(method, steps, config, backend, run)
        result.metrics.append(metrics)
        if config.write_labels:
            result.labels.extend(_label_rows(method.label, run, assignments))

    return result


# ------------------------------------------------------------
# All replicates
# ------------------------------------------------------------

def _log_progress(
    replication: Replication,
    trackers: Dict[str, RunningStats],
    runs: int,
    interval: int
) -> None:
    for metrics in replication.metrics:
        rand = metrics.rand_values()
        if rand.size == 0:
            logger.warning(f"Run {replication.run} {metrics.method}: no ground truth, no Rand index")
            continue
        trackers.setdefault(metrics.method, RunningStats()).update(float(rand.mean()))

    done = replication.run + 1
    if done % interval == 0 or done == runs:
        means = ", ".join(f"{m}={s.mean():.4f}" for m, s in trackers.items() if s.count)
        logger.info(f"Run {done}/{runs} | seed={replication.seed} | {means}")


def run_replications(config: RunConfig) -> List[Replication]:
    """
    Run all replicates, in parallel when ``config.workers > 1``.

    Results are returned in run order, so the output does not depend on
    the worker count.
    """

    logger.info(
        f"Running {config.runs} replicate(s) of {config.scenario.type} "
        f"with methods {', '.join(m.label for m in config.methods)}"
    )

    trackers: Dict[str, RunningStats] = {}

    if config.workers > 1:
        replications = Parallel(n_jobs=config.workers, verbose=0)(
            delayed(run_replication)(config, run) for run in range(config.runs)
        )
        for replication in replications:
            _log_progress(replication, trackers, config.runs, config.log_interval)
    else:
        replications = []
        for run in range(config.runs):
            replication = run_replication(config, run)
            replications.append(replication)
            _log_progress(replication, trackers, config.runs, config.log_interval)

    for method, stats in trackers.items():
        logger.info(
            f"{method}: mean Rand {stats.mean():.4f} "
            f"(standard error {stats.standard_error():.4f}, {stats.count} runs)"
        )

    return replications
