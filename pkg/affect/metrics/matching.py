"""
One-to-one matching of clusters between consecutive time steps.

Clusters are matched by maximum-weight bipartite matching where the weight
between a current and a previous cluster is the number of objects they
share.
"""

from typing import List

import numpy as np
from scipy.optimize import linear_sum_assignment

from affect.errors import IdMismatch, NonSquare
from affect.proximity.matrix import ClusterAssignment


def hungarian(weights) -> List[int]:
    """
    Maximum-weight perfect matching of a square weight matrix.

    Returns
    -------
    list of int
        ``perm`` with row ``i`` matched to column ``perm[i]``.

    Raises
    ------
    NonSquare
        If ``weights`` is not a square matrix.
    """

    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
        raise NonSquare(f"Weight matrix must be square, got shape {weights.shape}")
    if weights.shape[0] == 0:
        return []

    rows, cols = linear_sum_assignment(weights, maximize=True)
    perm = [0] * weights.shape[0]
    for r, c in zip(rows, cols):
        perm[int(r)] = int(c)
    return perm


def match_to_previous(
    current: ClusterAssignment,
    previous: ClusterAssignment
) -> ClusterAssignment:
    """
    Relabel ``current`` so matched clusters carry the previous label.

    Only objects present in both assignments contribute weight. When the
    cluster counts differ the contingency matrix is padded with zero-weight
    dummies; current clusters matched to a dummy get fresh labels after
    the previous ones. Labels are compacted afterwards if a previous label
    went unused.
    """

    previous_label = dict(zip(previous.ids, previous.labels.tolist()))
    kc, kp = current.k, previous.k
    size = max(kc, kp)

    contingency = np.zeros((size, size))
    for obj, label in zip(current.ids, current.labels.tolist()):
        other = previous_label.get(obj)
        if other is not None:
            contingency[label, other] += 1

    perm = hungarian(contingency)

    relabel = {}
    fresh = kp
    for label in range(kc):
        if perm[label] < kp:
            relabel[label] = perm[label]
        else:
            relabel[label] = fresh
            fresh += 1

    labels = [relabel[label] for label in current.labels.tolist()]
    return ClusterAssignment.from_labels(labels, current.ids)


def match_clusters(
    current: ClusterAssignment,
    previous: ClusterAssignment
) -> ClusterAssignment:
    """
    Relabel ``current`` to agree with ``previous`` on the same objects.

    The partition is unchanged; only labels move.

    Raises
    ------
    IdMismatch
        If the assignments cover different objects.
    """

    if set(current.ids) != set(previous.ids) or current.n != previous.n:
        raise IdMismatch("Cluster matching needs assignments of the same objects")
    return match_to_previous(current, previous)
