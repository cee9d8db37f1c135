"""
k-means on a similarity matrix.

The similarity matrix is treated as the Gram matrix of unseen feature
vectors, so the squared distance between object i and the centroid of
cluster c is

    W_ii - (2 / |c|) sum_{j in c} W_ij + (1 / |c|^2) sum_{j,l in c} W_jl

and the usual assign/update iteration runs without ever forming the
features.
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg

from affect.clustering.base import Clusterer
from affect.errors import KOutOfRange, NotPSD, WrongKind
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix

logger = logging.getLogger(__name__)

# Reject when the smallest eigenvalue is below -PSD_TOL * ||W||_2.
PSD_TOL = 1e-6


def _gram(values: np.ndarray) -> np.ndarray:
    """Check near-PSD and clamp negative eigenvalues to zero."""
    eigvals, eigvecs = scipy.linalg.eigh(values)
    scale = float(np.max(np.abs(eigvals))) if eigvals.size else 0.0
    lam_min = float(eigvals[0]) if eigvals.size else 0.0

    if lam_min < -PSD_TOL * scale:
        raise NotPSD(
            f"Smallest eigenvalue {lam_min:.3e} below tolerance "
            f"{-PSD_TOL * scale:.3e}"
        )
    if lam_min < 0:
        clamped = np.clip(eigvals, 0.0, None)
        values = (eigvecs * clamped) @ eigvecs.T
        values = 0.5 * (values + values.T)

    return values


def centroid_distances(values: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """n x k squared distances to cluster centroids; inf for empty clusters."""
    n = values.shape[0]
    onehot = np.zeros((n, k))
    onehot[np.arange(n), labels] = 1.0
    sizes = onehot.sum(axis=0)

    cross = values @ onehot
    within = np.einsum("ic,ij,jc->c", onehot, values, onehot)

    dist = np.full((n, k), np.inf)
    nonempty = sizes > 0
    dist[:, nonempty] = (
        np.diag(values)[:, None]
        - 2.0 * cross[:, nonempty] / sizes[nonempty]
        + within[nonempty] / sizes[nonempty] ** 2
    )
    return dist


def kmeans_cost(values: np.ndarray, labels: np.ndarray, k: int) -> float:
    """Sum of squared distances of each object to its own centroid."""
    dist = centroid_distances(values, labels, k)
    return float(dist[np.arange(len(labels)), labels].sum())


def _repair_empty(values: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Move the object farthest from its centroid into each empty cluster."""
    labels = labels.copy()
    while True:
        sizes = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(sizes == 0)
        if empty.size == 0:
            return labels

        dist = centroid_distances(values, labels, k)
        own = dist[np.arange(len(labels)), labels]
        own[sizes[labels] < 2] = -np.inf
        labels[int(np.argmax(own))] = int(empty[0])


def _iterate(values: np.ndarray, labels: np.ndarray, k: int, max_iter: int):
    labels = _repair_empty(values, labels, k)
    rows = np.arange(len(labels))

    for iteration in range(1, max_iter + 1):
        dist = centroid_distances(values, labels, k)
        best = np.argmin(dist, axis=1)
        # Keep the current cluster on ties so the cost strictly decreases.
        keep = dist[rows, labels] <= dist[rows, best]
        proposed = np.where(keep, labels, best)
        proposed = _repair_empty(values, proposed, k)

        if np.array_equal(proposed, labels):
            return labels, iteration
        labels = proposed

    logger.warning(f"Similarity k-means stopped after {max_iter} iterations")
    return labels, max_iter


def _seeded_labels(values: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Assign every object to the nearest of k randomly chosen objects."""
    n = values.shape[0]
    seeds = rng.choice(n, size=k, replace=False)
    diag = np.diag(values)
    dist = diag[:, None] - 2.0 * values[:, seeds] + diag[seeds][None, :]
    labels = np.argmin(dist, axis=1)
    labels[seeds] = np.arange(k)
    return labels


def kmeans_similarity(
    w: ProximityMatrix,
    k: int,
    init=None,
    n_init: int = 10,
    max_iter: int = 300
) -> ClusterAssignment:
    """
    Partition the objects of a similarity matrix into k clusters.

    Parameters
    ----------
    w : ProximityMatrix
        Similarity matrix, positive semidefinite within tolerance.

    k : int
        Number of clusters.

    init : ClusterAssignment or int or None
        Starting assignment, or the seed of ``n_init`` random restarts
        (the lowest-cost result is kept).

    Raises
    ------
    WrongKind, NotPSD, KOutOfRange
    """

    if w.kind != Kind.SIMILARITY:
        raise WrongKind("Similarity k-means needs a similarity matrix")
    if not 1 <= k <= w.n:
        raise KOutOfRange(f"k={k} outside 1..{w.n}")

    values = _gram(np.asarray(w.values))

    if isinstance(init, ClusterAssignment):
        start = init.aligned_to(w.ids)
        if start.k != k:
            raise KOutOfRange(f"Initial assignment has {start.k} clusters, expected {k}")
        labels, _ = _iterate(values, start.labels.copy(), k, max_iter)
        return ClusterAssignment(labels=labels, k=k, ids=w.ids)

    rng = np.random.default_rng(init)
    best_labels, best_cost = None, np.inf
    for _ in range(max(n_init, 1)):
        labels, _ = _iterate(values, _seeded_labels(values, k, rng), k, max_iter)
        cost = kmeans_cost(values, labels, k)
        if cost < best_cost:
            best_labels, best_cost = labels, cost

    return ClusterAssignment(labels=best_labels, k=k, ids=w.ids)


class KMeansClusterer(Clusterer):
    """
    Similarity k-means with a fixed k.

    A compatible initial assignment is refined directly; otherwise
    ``n_init`` random restarts seeded by ``seed`` are run.
    """

    kind = Kind.SIMILARITY

    def __init__(
        self,
        k: int,
        seed: Optional[int] = 0,
        n_init: int = 10,
        max_iter: int = 300
    ) -> None:
        if k < 1:
            raise KOutOfRange("k-means needs k >= 1")
        self.k = k
        self.seed = seed
        self.n_init = n_init
        self.max_iter = max_iter

    def cluster(
        self,
        matrix: ProximityMatrix,
        init: Optional[ClusterAssignment] = None
    ) -> ClusterAssignment:
        self._check(matrix)
        if init is not None and (init.ids != matrix.ids or not self.compatible(init)):
            init = None
        return kmeans_similarity(
            matrix,
            self.k,
            init=init if init is not None else self.seed,
            n_init=self.n_init,
            max_iter=self.max_iter,
        )

    def describe(self) -> str:
        return f"kmeans(k={self.k})"
