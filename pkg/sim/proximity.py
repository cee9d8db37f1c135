"""
Proximity matrices from feature vectors or positions.

    dot product  : W = X X^T                               (similarity)
    distance     : W_ij = ||x_i - x_j||                      (dissimilarity)
    gaussian     : W_ij = exp(-||x_i - x_j||^2 / (2 rho^2))  (similarity)
"""

from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from affect.proximity.matrix import Kind, ProximityMatrix

PROXIMITIES = ("dot", "distance", "gaussian")


def default_ids(n: int) -> tuple:
    return tuple(str(i) for i in range(n))


def dot_gram(features, ids: Optional[Sequence[str]] = None) -> ProximityMatrix:
    x = np.asarray(features, dtype=float)
    ids = default_ids(x.shape[0]) if ids is None else ids
    return ProximityMatrix.build(x @ x.T, ids, Kind.SIMILARITY)


def euclidean_distance(positions, ids: Optional[Sequence[str]] = None) -> ProximityMatrix:
    x = np.asarray(positions, dtype=float)
    ids = default_ids(x.shape[0]) if ids is None else ids
    return ProximityMatrix.build(squareform(pdist(x)), ids, Kind.DISSIMILARITY)


def gaussian_similarity(
    positions,
    rho: float,
    ids: Optional[Sequence[str]] = None
) -> ProximityMatrix:
    if rho <= 0:
        raise ValueError(f"Gaussian width must be positive, got {rho}")
    x = np.asarray(positions, dtype=float)
    ids = default_ids(x.shape[0]) if ids is None else ids
    sq = squareform(pdist(x, metric="sqeuclidean"))
    return ProximityMatrix.build(np.exp(-sq / (2.0 * rho ** 2)), ids, Kind.SIMILARITY)


def build_proximity(
    name: str,
    points,
    rho: float = 20.0,
    ids: Optional[Sequence[str]] = None
) -> ProximityMatrix:
    """Dispatch on the configured proximity name."""
    if name == "dot":
        return dot_gram(points, ids)
    if name == "distance":
        return euclidean_distance(points, ids)
    if name == "gaussian":
        return gaussian_similarity(points, rho, ids)
    raise ValueError(f"Unsupported proximity: {name}")
