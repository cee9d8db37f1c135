"""
Forgetting factor minimizing the expected squared Frobenius tracking error.

    alpha* = sum var(n_ij) / sum[(psi_hat^(t-1)_ij - psi^t_ij)^2 + var(n_ij)]

With the true proximities and noise variances this is the oracle
forgetting factor; with block-model plug-in estimates it is the adaptive
estimate.
"""

from dataclasses import dataclass

import numpy as np

from affect.proximity.matrix import ClusterAssignment, ProximityMatrix
from affect.tracking.block_model import BlockMoments


@dataclass(frozen=True)
class ForgettingEstimate:
    alpha: float
    numerator: float
    denominator: float
    iterations_run: int = 1


def forgetting_factor(
    prev_smoothed: np.ndarray,
    mean: np.ndarray,
    variance: np.ndarray,
    iterations_run: int = 1
) -> ForgettingEstimate:
    """
    Evaluate the shrinkage formula on full n x n matrices.

    A zero denominator gives alpha = 0. The result is clamped to [0, 1].
    """

    numerator = float(np.sum(variance))
    denominator = float(np.sum((np.asarray(prev_smoothed) - mean) ** 2)) + numerator

    if denominator > 0:
        alpha = numerator / denominator
    else:
        alpha = 0.0

    return ForgettingEstimate(
        alpha=min(max(alpha, 0.0), 1.0),
        numerator=numerator,
        denominator=denominator,
        iterations_run=iterations_run,
    )


def estimate_alpha(
    prev_smoothed: ProximityMatrix,
    moments: BlockMoments,
    clusters: ClusterAssignment,
    iterations_run: int = 1
) -> ForgettingEstimate:
    """
    Plug-in estimate of the forgetting factor from block moments.

    Parameters
    ----------
    prev_smoothed : ProximityMatrix
        psi_hat^(t-1), restricted to the objects of ``clusters``.

    moments : BlockMoments
        Block moments of W^t under ``clusters``.

    clusters : ClusterAssignment
        Partition that produced ``moments``.

    Raises
    ------
    IdMismatch
        If ``prev_smoothed`` and ``clusters`` index different objects.
    """

    clusters = clusters.aligned_to(prev_smoothed.ids)
    mean, variance = moments.expand(clusters)
    return forgetting_factor(prev_smoothed.values, mean, variance, iterations_run)
