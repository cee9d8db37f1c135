"""
Spectral clustering in three variants.

    average association : top-k eigenvectors of W
    ratio cut           : bottom-k eigenvectors of L = D - W
    normalized cut      : bottom-k eigenvectors of I - D^-1/2 W D^-1/2,
                          rows normalized to unit length

The rows of the eigenvector matrix are then clustered with k-means in
Euclidean space.
"""

import logging
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from sklearn.cluster import KMeans

from affect.clustering.base import Clusterer
from affect.clustering.eigen import eigh
from affect.errors import KOutOfRange, WrongKind
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix

logger = logging.getLogger(__name__)

# Added to zero degrees so D^-1/2 stays finite.
ISOLATED_EPS = 1e-12

EMBEDDING_RESTARTS = 10


class SpectralVariant(str, Enum):
    AVERAGE_ASSOCIATION = "average_association"
    RATIO_CUT = "ratio_cut"
    NORMALIZED_CUT = "normalized_cut"

    @classmethod
    def parse(cls, value) -> "SpectralVariant":
        if isinstance(value, SpectralVariant):
            return value
        aliases = {"aa": cls.AVERAGE_ASSOCIATION, "rc": cls.RATIO_CUT, "nc": cls.NORMALIZED_CUT}
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"Unknown spectral variant: {value!r}") from None


def embedding(values: np.ndarray, k: int, variant: SpectralVariant) -> np.ndarray:
    """n x k spectral embedding Z of a similarity matrix."""

    if variant == SpectralVariant.AVERAGE_ASSOCIATION:
        return eigh(values).top(k)

    degrees = values.sum(axis=1)

    if variant == SpectralVariant.RATIO_CUT:
        laplacian = np.diag(degrees) - values
        return eigh(laplacian).bottom(k)

    isolated = degrees <= 0
    if isolated.any():
        logger.debug(f"{int(isolated.sum())} isolated vertices in normalized cut")
        degrees = np.where(isolated, degrees + ISOLATED_EPS, degrees)

    inv_sqrt = 1.0 / np.sqrt(degrees)
    normalized = np.eye(len(degrees)) - inv_sqrt[:, None] * values * inv_sqrt[None, :]
    z = eigh(0.5 * (normalized + normalized.T)).bottom(k)

    norms = np.linalg.norm(z, axis=1, keepdims=True)
    return np.divide(z, norms, out=np.zeros_like(z), where=norms > 0)


def spectral(
    w: ProximityMatrix,
    k: int,
    variant=SpectralVariant.NORMALIZED_CUT,
    seed: Optional[int] = 0
) -> ClusterAssignment:
    """
    Spectral clustering of a similarity matrix into k clusters.

    The embedding is clustered by k-means with ten restarts seeded from
    ``seed``; the lowest-inertia result is kept.

    Raises
    ------
    WrongKind
        If ``w`` is a dissimilarity matrix.
    KOutOfRange
        If k is not in 1..n.
    ValueError
        If ratio or normalized cut is asked for with negative entries.
    """

    variant = SpectralVariant.parse(variant)

    if w.kind != Kind.SIMILARITY:
        raise WrongKind("Spectral clustering needs a similarity matrix")
    if not 1 <= k <= w.n:
        raise KOutOfRange(f"k={k} outside 1..{w.n}")

    values = np.asarray(w.values)
    if variant != SpectralVariant.AVERAGE_ASSOCIATION and np.any(values < 0):
        raise ValueError(f"{variant.value} needs nonnegative similarities")

    if k == 1:
        return ClusterAssignment.single(w.ids)

    z = embedding(values, k, variant)
    labels = KMeans(
        n_clusters=k,
        n_init=EMBEDDING_RESTARTS,
        random_state=seed,
    ).fit_predict(z)

    return ClusterAssignment.from_labels(labels, w.ids)


class SpectralClusterer(Clusterer):
    """
    Spectral clustering with either a fixed k or k chosen by modularity
    over ``k_range`` (inclusive bounds).
    """

    kind = Kind.SIMILARITY

    def __init__(
        self,
        variant="normalized_cut",
        k: Optional[int] = None,
        k_range: Optional[Sequence[int]] = None,
        seed: Optional[int] = 0
    ) -> None:
        if (k is None) == (k_range is None):
            raise ValueError("Give exactly one of k or k_range")
        if k is not None and k < 1:
            raise KOutOfRange("Spectral clustering needs k >= 1")

        self.variant = SpectralVariant.parse(variant)
        self.k = k
        self.k_range: Optional[Tuple[int, int]] = (
            None if k_range is None else (int(k_range[0]), int(k_range[1]))
        )
        self.seed = seed
        self.last_k: Optional[int] = None

    def cluster(
        self,
        matrix: ProximityMatrix,
        init: Optional[ClusterAssignment] = None
    ) -> ClusterAssignment:
        self._check(matrix)

        if self.k is not None:
            assignment = spectral(matrix, self.k, self.variant, self.seed)
        else:
            from affect.clustering.modularity import select_k_modularity

            lo, hi = self.k_range
            _, assignment = select_k_modularity(
                matrix, range(lo, hi + 1), self.variant, self.seed
            )

        self.last_k = assignment.k
        return assignment

    def describe(self) -> str:
        if self.k is not None:
            return f"spectral({self.variant.value}, k={self.k})"
        lo, hi = self.k_range
        return f"spectral({self.variant.value}, k in {lo}..{hi} by modularity)"
