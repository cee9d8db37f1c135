"""Newman modularity of a weighted graph partition and selection of k."""

import logging
from typing import Iterable, Tuple

import numpy as np

from affect.clustering.spectral import SpectralVariant, spectral
from affect.errors import EmptyRange, WrongKind
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix

logger = logging.getLogger(__name__)


def modularity(w: ProximityMatrix, assignment: ClusterAssignment) -> float:
    """
    Q = sum_c [ sum_{i,j in c} w_ij / 2m - (sum_{i in c} d_i / 2m)^2 ]

    with d_i the row sums and 2m the total weight. A graph without edges
    has Q = 0.
    """

    values = np.asarray(w.values)
    labels = assignment.aligned_to(w.ids).labels
    total = float(values.sum())
    if total == 0.0:
        return 0.0

    onehot = np.zeros((w.n, assignment.k))
    onehot[np.arange(w.n), labels] = 1.0

    within = np.einsum("ic,ij,jc->c", onehot, values, onehot)
    degree = onehot.T @ values.sum(axis=1)

    return float(np.sum(within / total - (degree / total) ** 2))


def select_k_modularity(
    w: ProximityMatrix,
    k_range: Iterable[int],
    variant=SpectralVariant.NORMALIZED_CUT,
    seed: int = 0
) -> Tuple[int, ClusterAssignment]:
    """
    Spectral clustering for each k in ``k_range``, keeping the partition
    of highest modularity. Ties go to the smaller k; values of k above the
    number of objects are skipped.

    Raises
    ------
    EmptyRange
        If no candidate k remains.
    """

    if w.kind != Kind.SIMILARITY:
        raise WrongKind("Modularity selection needs a similarity matrix")

    candidates = sorted(k for k in k_range if 1 <= k <= w.n)
    if not candidates:
        raise EmptyRange("No cluster count to choose from")

    best_assignment, best_q = None, -np.inf
    for k in candidates:
        assignment = spectral(w, k, variant, seed)
        q = modularity(w, assignment)
        logger.debug(f"k={k} modularity={q:.6f}")
        if q > best_q:
            best_assignment, best_q = assignment, q

    return best_assignment.k, best_assignment
