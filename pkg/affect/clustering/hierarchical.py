"""
Agglomerative hierarchical clustering on a dissimilarity matrix.

Starting from singletons, the two closest clusters are merged until one
cluster remains. Cluster-to-cluster dissimilarities are updated with the
Lance-Williams rule of the chosen linkage. Among tied pairs the one with
the smallest (row, column) slot indices is merged first.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from affect.clustering.base import Clusterer
from affect.errors import KOutOfRange, WrongKind
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix

LINKAGES = ("single", "complete", "average")


@dataclass(frozen=True)
class Dendrogram:
    """
    Merge history.

    Leaves are numbered 0..n-1 in object order; the cluster created by merge
    ``s`` is numbered ``n + s``.
    """

    merges: Tuple[Tuple[int, int, float], ...]
    n: int
    ids: Tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.merges) != max(self.n - 1, 0):
            raise ValueError(f"A dendrogram of {self.n} leaves needs {self.n - 1} merges")

    @property
    def heights(self) -> List[float]:
        return [h for _, _, h in self.merges]


def hierarchical(dissim: ProximityMatrix, linkage: str = "complete") -> Dendrogram:
    """
    Build the dendrogram of ``dissim`` under single, complete or average linkage.

    Raises
    ------
    WrongKind
        If ``dissim`` is a similarity matrix.
    ValueError
        If the linkage is unknown.
    """

    if dissim.kind != Kind.DISSIMILARITY:
        raise WrongKind("Hierarchical clustering needs a dissimilarity matrix")
    if linkage not in LINKAGES:
        raise ValueError(f"Unknown linkage {linkage!r}; expected one of {LINKAGES}")

    n = dissim.n
    dist = np.array(dissim.values, dtype=float, copy=True)
    np.fill_diagonal(dist, np.inf)

    active = np.ones(n, dtype=bool)
    sizes = np.ones(n)
    slot_cluster = list(range(n))
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)

    merges: List[Tuple[int, int, float]] = []

    for step in range(n - 1):
        live = upper & active[:, None] & active[None, :]
        masked = np.where(live, dist, np.inf)
        flat = int(np.argmin(masked))
        i, j = divmod(flat, n)
        height = float(masked[i, j])

        merges.append((slot_cluster[i], slot_cluster[j], height))

        if linkage == "single":
            merged = np.minimum(dist[i], dist[j])
        elif linkage == "complete":
            merged = np.maximum(dist[i], dist[j])
        else:
            merged = (sizes[i] * dist[i] + sizes[j] * dist[j]) / (sizes[i] + sizes[j])

        dist[i, :] = merged
        dist[:, i] = merged
        dist[i, i] = np.inf

        sizes[i] += sizes[j]
        active[j] = False
        slot_cluster[i] = n + step

    return Dendrogram(merges=tuple(merges), n=n, ids=dissim.ids)


def cut(dendrogram: Dendrogram, k: int) -> ClusterAssignment:
    """
    Cut the dendrogram into exactly k clusters by undoing its last k-1 merges.

    Labels are numbered by first appearance in object order.

    Raises
    ------
    KOutOfRange
        If k is not in 1..n.
    """

    n = dendrogram.n
    if not 1 <= k <= n:
        raise KOutOfRange(f"k={k} outside 1..{n}")

    parent = list(range(2 * n - 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for step, (a, b, _) in enumerate(dendrogram.merges[: n - k]):
        new = n + step
        parent[find(a)] = new
        parent[find(b)] = new

    roots = [find(leaf) for leaf in range(n)]
    first_seen = {}
    labels = [first_seen.setdefault(root, len(first_seen)) for root in roots]

    return ClusterAssignment(labels=np.asarray(labels), k=k, ids=dendrogram.ids)


class HierarchicalClusterer(Clusterer):
    """Dendrogram cut at a fixed number of clusters."""

    kind = Kind.DISSIMILARITY

    def __init__(self, k: int, linkage: str = "complete") -> None:
        if k < 1:
            raise KOutOfRange("Hierarchical clustering needs k >= 1")
        if linkage not in LINKAGES:
            raise ValueError(f"Unknown linkage {linkage!r}; expected one of {LINKAGES}")
        self.k = k
        self.linkage = linkage

    def cluster(
        self,
        matrix: ProximityMatrix,
        init: Optional[ClusterAssignment] = None
    ) -> ClusterAssignment:
        self._check(matrix)
        return cut(hierarchical(matrix, self.linkage), self.k)

    def describe(self) -> str:
        return f"hierarchical({self.linkage}, k={self.k})"
