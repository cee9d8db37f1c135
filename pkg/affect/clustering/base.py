"""
Static clustering interface.

A clusterer partitions the objects of one proximity matrix. It is what
the adaptive tracker applies to each smoothed matrix, and what static
clustering and the constant-alpha baselines apply to raw or blended ones.

Clusterers must NOT:
- keep state between calls
- smooth or estimate forgetting factors
"""

from abc import ABC, abstractmethod
from typing import Optional

from affect.errors import KOutOfRange, WrongKind
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix


class Clusterer(ABC):
    """
    Abstract base class for static clustering algorithms.

    Attributes
    ----------
    kind : Kind
        Matrix kind the algorithm accepts.

    k : int or None
        Fixed number of clusters, or None when the algorithm picks it.
    """

    kind: Kind = Kind.SIMILARITY
    k: Optional[int] = None

    @abstractmethod
    def cluster(
        self,
        matrix: ProximityMatrix,
        init: Optional[ClusterAssignment] = None
    ) -> ClusterAssignment:
        """
        Partition the objects of ``matrix``.

        Parameters
        ----------
        matrix : ProximityMatrix
            Proximities of one time step.

        init : ClusterAssignment, optional
            Starting assignment over the same objects. Algorithms that
            cannot use one ignore it.

        Returns
        -------
        ClusterAssignment
            Assignment indexed by ``matrix.ids``.
        """
        pass

    def compatible(self, init: ClusterAssignment) -> bool:
        """Whether ``init`` can seed this algorithm."""
        return self.k is None or init.k == self.k

    def _check(self, matrix: ProximityMatrix, k: Optional[int] = None) -> None:
        if matrix.kind != self.kind:
            raise WrongKind(
                f"{type(self).__name__} needs a {self.kind.value} matrix, "
                f"got {matrix.kind.value}"
            )
        k = self.k if k is None else k
        if k is not None and not 1 <= k <= matrix.n:
            raise KOutOfRange(f"k={k} outside 1..{matrix.n}")

    def describe(self) -> str:
        return type(self).__name__


# ------------------------------------------------------------
# Clusterer factory
# ------------------------------------------------------------

def get_clusterer(name: str, **params) -> Clusterer:
    """
    Instantiate a clusterer by name.

    Parameters
    ----------
    name : str
        "hierarchical", "kmeans" or "spectral".

    params
        Constructor arguments of the chosen clusterer.

    Raises
    ------
    ValueError
        If the name is not supported.
    """

    name = name.lower()

    if name == "hierarchical":
        from affect.clustering.hierarchical import HierarchicalClusterer
        return HierarchicalClusterer(**params)

    if name == "kmeans":
        from affect.clustering.kmeans import KMeansClusterer
        return KMeansClusterer(**params)

    if name == "spectral":
        from affect.clustering.spectral import SpectralClusterer
        return SpectralClusterer(**params)

    raise ValueError(f"Unsupported clusterer: {name}")
