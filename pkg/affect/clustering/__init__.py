"""Static clustering algorithms applied at each time step."""

from affect.clustering.base import Clusterer, get_clusterer
from affect.clustering.eigen import EigenDecomposition, eigh
from affect.clustering.hierarchical import Dendrogram, HierarchicalClusterer, cut, hierarchical
from affect.clustering.kmeans import KMeansClusterer, kmeans_similarity
from affect.clustering.modularity import modularity, select_k_modularity
from affect.clustering.spectral import SpectralClusterer, SpectralVariant, spectral

__all__ = [
    "Clusterer",
    "Dendrogram",
    "EigenDecomposition",
    "HierarchicalClusterer",
    "KMeansClusterer",
    "SpectralClusterer",
    "SpectralVariant",
    "cut",
    "eigh",
    "get_clusterer",
    "hierarchical",
    "kmeans_similarity",
    "modularity",
    "select_k_modularity",
    "spectral",
]
