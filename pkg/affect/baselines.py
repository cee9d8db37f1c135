"""
Comparison methods and method-string parsing.

    static        cluster each W^t on its own (AFFECT with alpha = 0)
    constant:a    smooth with the fixed forgetting factor a
    pcq:a         cluster a W^(t-1) + (1 - a) W^t (one step of memory)
    pcq:trained   pcq with a chosen on a training replicate
    affect        adaptive forgetting factor, 3 iterations per step
    affect:i      adaptive forgetting factor, i iterations per step
    oracle        smoothing with the oracle forgetting factor
"""

import logging
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from affect.errors import AlphaOutOfRange, ConfigError
from affect.metrics.matching import match_to_previous
from affect.metrics.rand import rand_index
from affect.metrics.run_metrics import RunMetrics, StepMetrics
from affect.metrics.tracking_error import mse
from affect.proximity.matrix import ProximityMatrix
from affect.tracking.affect import AffectOptions, AffectTracker, StepResult, _run_step
from affect.tracking.smoothing import SmoothedState

logger = logging.getLogger(__name__)

BASELINES = ("static", "constant", "pcq")
PCQ_GRID = tuple(np.round(np.linspace(0.0, 1.0, 11), 10))


@dataclass(frozen=True)
class BaselineSpec:
    """static, constant_alpha(alpha) or pcq(alpha)."""

    name: str
    alpha: float = 0.0

    def __post_init__(self) -> None:
        if self.name not in BASELINES:
            raise ConfigError(f"Unknown baseline {self.name!r}; expected one of {BASELINES}")
        if not 0.0 <= self.alpha <= 1.0:
            raise AlphaOutOfRange(f"Baseline forgetting factor must lie in [0, 1], got {self.alpha}")
        if self.name == "static" and self.alpha != 0.0:
            raise ConfigError("Static clustering has no forgetting factor")


@dataclass(frozen=True)
class MethodSpec:
    """
    A parsed method string.

    ``kind`` is one of affect, oracle, static, constant, pcq.
    """

    label: str
    kind: str
    alpha: Optional[float] = None
    iterations: Optional[int] = None
    trained: bool = False

    @classmethod
    def parse(cls, text: str) -> "MethodSpec":
        label = str(text).strip()
        name, _, arg = label.partition(":")
        name = name.lower()

        if name == "affect":
            if not arg:
                return cls(label=label, kind="affect")
            try:
                iterations = int(arg)
            except ValueError:
                raise ConfigError(f"Iteration count {arg!r} in {label!r} is not an integer") from None
            if iterations < 1:
                raise ConfigError(f"{label!r} needs at least one iteration")
            return cls(label=label, kind="affect", iterations=iterations)

        if name in ("static", "oracle"):
            if arg:
                raise ConfigError(f"Method {name!r} takes no argument")
            return cls(label=label, kind=name)

        if name in ("constant", "pcq"):
            if name == "pcq" and arg == "trained":
                return cls(label=label, kind="pcq", trained=True)
            try:
                alpha = float(arg)
            except ValueError:
                raise ConfigError(f"Forgetting factor {arg!r} in {label!r} is not a number") from None
            if not 0.0 <= alpha <= 1.0:
                raise ConfigError(f"Forgetting factor in {label!r} must lie in [0, 1]")
            return cls(label=label, kind=name, alpha=alpha)

        raise ConfigError(f"Unsupported method: {label}")

    def baseline(self, alpha: Optional[float] = None) -> BaselineSpec:
        if self.kind not in BASELINES:
            raise ValueError(f"{self.label} is not a baseline")
        if self.kind == "static":
            return BaselineSpec("static")
        alpha = self.alpha if alpha is None else alpha
        if alpha is None:
            raise ValueError(f"{self.label} needs a trained forgetting factor")
        return BaselineSpec(self.kind, alpha)


# ------------------------------------------------------------
# PCQ
# ------------------------------------------------------------

class PCQTracker:
    """
    Clusters alpha W^(t-1) + (1 - alpha) W^t; W^0 alone at t = 0.

    Objects absent at t-1 keep their W^t rows and columns.
    """

    def __init__(self, clusterer, alpha: float) -> None:
        self.clusterer = clusterer
        self.alpha = alpha
        self._previous: Optional[SmoothedState] = None
        self._assignment = None
        self.steps = 0

    def step(self, current: ProximityMatrix) -> StepResult:
        result = _run_step(
            self._previous,
            current,
            self.clusterer,
            None,
            1,
            init_policy="static",
            alpha=self.alpha if self._previous is not None else None,
        )
        self._previous = SmoothedState(psi_hat=current, t=result.state.t)
        self.steps += 1

        if self._assignment is not None:
            result = replace(result, assignment=match_to_previous(result.assignment, self._assignment))
        self._assignment = result.assignment
        return result


# ------------------------------------------------------------
# Running a method over a sequence
# ------------------------------------------------------------

def _matrix(step):
    return step if isinstance(step, ProximityMatrix) else step.matrix


def score_step(step, result: StepResult, t: int) -> StepMetrics:
    """Rand index against ground truth and MSE against true proximities, when known."""
    truth = getattr(step, "truth", None)
    oracle_psi = getattr(step, "oracle_psi", None)

    rand = None
    if truth is not None and result.assignment.n >= 2:
        rand = rand_index(truth, result.assignment)

    error = None
    if oracle_psi is not None:
        error = mse(result.psi_hat, oracle_psi)

    return StepMetrics(t=t, rand=rand, mse=error, alpha=result.alpha, k=result.assignment.k)


def run_tracker(
    step_fn: Callable[[ProximityMatrix, int], StepResult],
    steps: Sequence,
    method: str,
    run: int = 0,
    seed: int = 0,
    assignments: Optional[list] = None
) -> RunMetrics:
    """
    Feed ``steps`` through ``step_fn(matrix, t)`` and score every step.

    ``steps`` holds ProximityMatrix objects or scenario steps carrying
    ``matrix`` plus optional ``truth`` and ``oracle_psi``.
    Each step's assignment is appended to ``assignments`` when given.
    """

    metrics = RunMetrics(method=method, run=run, seed=seed)
    for t, step in enumerate(steps):
        result = step_fn(_matrix(step), t)
        metrics.add(score_step(step, result, t), result.iteration_alphas if t else ())
        if assignments is not None:
            assignments.append((t, result.assignment))
    return metrics


def run_baseline(
    spec: BaselineSpec,
    sequence: Sequence,
    clusterer,
    method: Optional[str] = None,
    run: int = 0,
    seed: int = 0,
    assignments: Optional[list] = None
) -> RunMetrics:
    """
    Run a comparison method over a proximity sequence.

    Static and constant-alpha clustering never warm-start the clusterer, so
    static per-step assignments equal clustering each W^t directly.
    """

    method = method or (spec.name if spec.name == "static" else f"{spec.name}:{spec.alpha:g}")

    if spec.name == "pcq":
        tracker = PCQTracker(clusterer, spec.alpha)
        return run_tracker(lambda matrix, t: tracker.step(matrix), sequence, method, run, seed, assignments)

    alpha = 0.0 if spec.name == "static" else spec.alpha
    tracker = AffectTracker(
        clusterer,
        AffectOptions(iterations=1, init_policy="static"),
        fixed_alpha=alpha,
    )
    return run_tracker(lambda matrix, t: tracker.step(matrix), sequence, method, run, seed, assignments)


def train_pcq_alpha(
    training: Sequence,
    clusterer,
    grid: Sequence[float] = PCQ_GRID
) -> float:
    """
    Forgetting factor from ``grid`` that maximizes PCQ's mean Rand index on
    a training replicate with known memberships. Ties go to the smaller
    alpha.

    Raises
    ------
    ValueError
        If the training replicate has no ground truth.
    """

    best_alpha, best_rand = None, -np.inf
    for alpha in sorted(float(a) for a in grid):
        metrics = run_baseline(BaselineSpec("pcq", alpha), training, clusterer)
        rand = metrics.rand_values()
        if rand.size == 0:
            raise ValueError("PCQ training needs ground-truth memberships")
        score = float(rand.mean())
        logger.debug(f"pcq training alpha={alpha:.2f} mean_rand={score:.4f}")
        if score > best_rand:
            best_alpha, best_rand = alpha, score

    return best_alpha

