"""
Adaptive evolutionary clustering step.

At each time step the forgetting factor and the cluster memberships are
estimated jointly:

    C^t <- C^(t-1)
    repeat `iterations` times:
        block moments of W^t under C^t
        alpha^t from the shrinkage formula
        psi_hat^t = alpha^t psi_hat^(t-1) + (1 - alpha^t) W^t
        C^t <- cluster(psi_hat^t)

Objects that left since the previous step are dropped from psi_hat^(t-1);
objects that arrived take their rows and columns from W^t unsmoothed and
do not enter the forgetting factor estimate.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from affect.errors import EmptyIntersection
from affect.metrics.matching import match_to_previous
from affect.proximity.alignment import align_state
from affect.proximity.matrix import ClusterAssignment, ProximityMatrix
from affect.proximity.registry import ObjectRegistry
from affect.tracking.block_model import estimate_block_moments
from affect.tracking.forgetting import ForgettingEstimate, estimate_alpha
from affect.tracking.smoothing import SmoothedState, _check_alpha, smooth_update

logger = logging.getLogger(__name__)

INIT_POLICIES = ("previous", "static")


@dataclass(frozen=True)
class AffectOptions:
    """
    Parameters of the estimate-then-cluster loop.

    iterations : number of estimate/cluster rounds per step (fixed count).
    init_policy : "previous" starts each step from the last assignment,
        "static" from static clustering of W^t.
    match_labels : relabel each step's clusters to agree with the previous
        step's labels.
    """

    iterations: int = 3
    init_policy: str = "previous"
    match_labels: bool = True

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ValueError("AFFECT needs at least one iteration per step")
        if self.init_policy not in INIT_POLICIES:
            raise ValueError(
                f"Unknown init policy {self.init_policy!r}; expected one of {INIT_POLICIES}"
            )


@dataclass(frozen=True, eq=False)
class StepResult:
    t: int
    state: SmoothedState
    assignment: ClusterAssignment
    estimate: Optional[ForgettingEstimate]
    iteration_alphas: Tuple[float, ...] = field(default_factory=tuple)
    new_ids: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def psi_hat(self) -> ProximityMatrix:
        return self.state.psi_hat

    @property
    def alpha(self) -> Optional[float]:
        return None if self.estimate is None else self.estimate.alpha


# ------------------------------------------------------------
# Helpers
# ------------------------------------------------------------

def _embed(current: ProximityMatrix, smoothed_shared: ProximityMatrix) -> ProximityMatrix:
    """Place the smoothed block of retained objects into W^t."""
    if smoothed_shared.ids == current.ids:
        return smoothed_shared

    index = current.index()
    rows = [index[obj] for obj in smoothed_shared.ids]
    values = np.array(current.values, copy=True)
    values[np.ix_(rows, rows)] = smoothed_shared.values
    return current.with_values(values)


def _covering(
    current: ProximityMatrix,
    init: Optional[ClusterAssignment]
) -> Optional[ClusterAssignment]:
    """``init`` restricted to the current objects, or None if it misses any."""
    if init is None or not set(current.ids) <= set(init.ids):
        return None
    return init.restrict(current.ids)


def _initial_assignment(
    current: ProximityMatrix,
    clusterer,
    init: Optional[ClusterAssignment],
    init_policy: str
) -> ClusterAssignment:
    if init_policy == "previous":
        start = _covering(current, init)
        if start is not None and clusterer.compatible(start):
            return start
        logger.debug("Previous assignment unusable at this step; clustering W^t statically")

    return clusterer.cluster(current)


def _run_step(
    state: Optional[SmoothedState],
    current: ProximityMatrix,
    clusterer,
    init: Optional[ClusterAssignment],
    iterations: int,
    init_policy: str = "previous",
    alpha: Optional[float] = None
) -> StepResult:
    """
    One time step. With ``alpha`` given the estimation is skipped and a
    single smoothing/clustering round uses that forgetting factor.
    """

    if state is not None:
        try:
            prev_restricted, new_ids = align_state(state.psi_hat, current)
        except EmptyIntersection:
            logger.info("No objects shared with the previous step; restarting smoothing")
            state = None

    warm = _covering(current, init) if init_policy == "previous" else None

    if state is None:
        assignment = clusterer.cluster(current, init=warm)
        return StepResult(
            t=0,
            state=SmoothedState.initial(current),
            assignment=assignment,
            estimate=None,
            new_ids=tuple(current.ids),
        )

    shared_ids = prev_restricted.ids
    current_shared = current if not new_ids else current.submatrix(shared_ids)

    if alpha is not None:
        alpha = _check_alpha(alpha)
        estimate = ForgettingEstimate(alpha=alpha, numerator=float("nan"),
                                      denominator=float("nan"), iterations_run=0)
        smoothed = smooth_update(prev_restricted, current_shared, alpha)
        psi_hat = _embed(current, smoothed)
        assignment = clusterer.cluster(psi_hat, init=warm)
        return StepResult(
            t=state.t + 1,
            state=state.advance(psi_hat, alpha),
            assignment=assignment,
            estimate=estimate,
            iteration_alphas=(),
            new_ids=tuple(new_ids),
        )

    if iterations < 1:
        raise ValueError("AFFECT needs at least one iteration per step")

    assignment = _initial_assignment(current, clusterer, init, init_policy)
    iteration_alphas: List[float] = []
    estimate = None
    psi_hat = current

    for iteration in range(1, iterations + 1):
        shared_clusters = assignment.restrict(shared_ids)
        moments = estimate_block_moments(current_shared, shared_clusters)
        estimate = estimate_alpha(
            prev_restricted, moments, shared_clusters, iterations_run=iteration
        )
        iteration_alphas.append(estimate.alpha)

        smoothed = smooth_update(prev_restricted, current_shared, estimate.alpha)
        psi_hat = _embed(current, smoothed)
        assignment = clusterer.cluster(psi_hat, init=assignment)

        logger.debug(
            f"t={state.t + 1} iteration={iteration} alpha={estimate.alpha:.6f} k={assignment.k}"
        )

    return StepResult(
        t=state.t + 1,
        state=state.advance(psi_hat, estimate.alpha),
        assignment=assignment,
        estimate=estimate,
        iteration_alphas=tuple(iteration_alphas),
        new_ids=tuple(new_ids),
    )


def affect_step(
    state: Optional[SmoothedState],
    current: ProximityMatrix,
    clusterer,
    init: Optional[ClusterAssignment] = None,
    iterations: int = 3
) -> Tuple[SmoothedState, ClusterAssignment, Optional[ForgettingEstimate]]:
    """
    Run one adaptive step.

    Parameters
    ----------
    state : SmoothedState or None
        Smoothed state after step t-1; None at t = 0, where psi_hat^0 = W^0
        and no forgetting factor is estimated.

    current : ProximityMatrix
        Observed W^t.

    clusterer : Clusterer
        Static clustering algorithm applied to psi_hat^t.

    init : ClusterAssignment, optional
        Assignment the iteration starts from, normally the previous step's
        result. Static clustering of W^t is used when it is missing or does
        not cover the current objects.

    iterations : int
        Number of estimate/cluster rounds (default 3).

    Returns
    -------
    tuple
        (new state, final assignment, last ForgettingEstimate or None at t=0).
    """

    result = _run_step(state, current, clusterer, init, iterations)
    return result.state, result.assignment, result.estimate


# ------------------------------------------------------------
# Stream tracker
# ------------------------------------------------------------

class AffectTracker:
    """
    Owns the smoothed state of one proximity stream.

    With ``fixed_alpha`` set, every step smooths with that constant
    forgetting factor and clusters once (``fixed_alpha=0`` is static
    clustering).
    """

    def __init__(
        self,
        clusterer,
        options: AffectOptions = AffectOptions(),
        fixed_alpha: Optional[float] = None
    ) -> None:
        self.clusterer = clusterer
        self.options = options
        self.fixed_alpha = None if fixed_alpha is None else _check_alpha(fixed_alpha)
        self.registry = ObjectRegistry()
        self.state: Optional[SmoothedState] = None
        self.assignment: Optional[ClusterAssignment] = None
        self.steps = 0

    def step(self, current: ProximityMatrix, alpha: Optional[float] = None) -> StepResult:
        """
        Process W^t.

        Parameters
        ----------
        current : ProximityMatrix
            Observed matrix at the next time step.

        alpha : float, optional
            Forgetting factor to apply instead of estimating one.
        """

        added, removed = self.registry.observe(current.ids)
        if self.steps > 0 and (added or removed):
            logger.debug(f"Step {self.steps}: {len(added)} objects entered, {len(removed)} left")

        if alpha is None:
            alpha = self.fixed_alpha

        result = _run_step(
            self.state,
            current,
            self.clusterer,
            self.assignment,
            self.options.iterations,
            init_policy=self.options.init_policy,
            alpha=alpha,
        )

        assignment = result.assignment
        if self.options.match_labels and self.assignment is not None:
            assignment = match_to_previous(assignment, self.assignment)

        self.state = result.state
        self.assignment = assignment
        self.steps += 1

        return StepResult(
            t=self.steps - 1,
            state=result.state,
            assignment=assignment,
            estimate=result.estimate,
            iteration_alphas=result.iteration_alphas,
            new_ids=result.new_ids,
        )
