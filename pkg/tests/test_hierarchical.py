import itertools

import numpy as np
import pytest

from affect.clustering import HierarchicalClusterer, cut, hierarchical
from affect.errors import KOutOfRange, WrongKind
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix
from sim.proximity import euclidean_distance


def _line(points):
    return euclidean_distance(np.asarray(points, dtype=float)[:, None])


def test_single_linkage_on_three_points():
    dendrogram = hierarchical(_line([0.0, 1.0, 10.0]), "single")
    assert dendrogram.heights == pytest.approx([1.0, 9.0])
    assert dendrogram.merges[0][:2] == (0, 1)
    assert dendrogram.merges[1][:2] == (3, 2)


def test_single_object_has_no_merges():
    dendrogram = hierarchical(_line([4.0]), "complete")
    assert dendrogram.merges == ()
    assert cut(dendrogram, 1).labels.tolist() == [0]


def test_cut_three_points():
    dendrogram = hierarchical(_line([0.0, 1.0, 10.0]), "single")
    assert cut(dendrogram, 2).labels.tolist() == [0, 0, 1]
    assert cut(dendrogram, 1).k == 1
    assert cut(dendrogram, 3).labels.tolist() == [0, 1, 2]


def test_cut_rejects_bad_k():
    dendrogram = hierarchical(_line([0.0, 1.0]), "single")
    with pytest.raises(KOutOfRange):
        cut(dendrogram, 3)
    with pytest.raises(KOutOfRange):
        cut(dendrogram, 0)


def _brute_force_merges(dist, linkage):
    reduce = {"single": min, "complete": max, "average": lambda v: sum(v) / len(v)}[linkage]
    clusters = [[i] for i in range(dist.shape[0])]
    heights = []
    while len(clusters) > 1:
        best = None
        for a, b in itertools.combinations(range(len(clusters)), 2):
            value = reduce([dist[i, j] for i in clusters[a] for j in clusters[b]])
            if best is None or value < best[0]:
                best = (value, a, b)
        value, a, b = best
        heights.append(value)
        clusters[a] = clusters[a] + clusters[b]
        del clusters[b]
    return heights


@pytest.mark.parametrize("linkage", ["single", "complete", "average"])
def test_merge_heights_match_recomputed_linkage(rng, linkage):
    points = rng.uniform(0, 10, size=(5, 2))
    dissim = euclidean_distance(points)
    dendrogram = hierarchical(dissim, linkage)
    expected = _brute_force_merges(np.asarray(dissim.values), linkage)
    assert dendrogram.heights == pytest.approx(expected)


def test_single_linkage_heights_are_spanning_tree_edges(rng):
    from scipy.sparse.csgraph import minimum_spanning_tree

    points = rng.uniform(0, 10, size=(15, 3))
    dissim = euclidean_distance(points)
    tree = minimum_spanning_tree(np.asarray(dissim.values)).toarray()
    edges = np.sort(tree[tree > 0])

    dendrogram = hierarchical(dissim, "single")
    assert len(edges) == 14
    assert sorted(dendrogram.heights) == pytest.approx(edges.tolist())


def test_complete_linkage_matches_scipy(rng):
    from scipy.cluster.hierarchy import fcluster, linkage
    from scipy.spatial.distance import pdist

    points = rng.uniform(0, 10, size=(12, 2))
    ours = HierarchicalClusterer(k=3, linkage="complete").cluster(euclidean_distance(points))
    theirs = fcluster(linkage(pdist(points), "complete"), 3, criterion="maxclust")
    assert ours.same_partition(ClusterAssignment.from_labels(theirs, ours.ids))


def test_clusterer_rejects_similarity():
    similarity = ProximityMatrix.build(np.eye(3), ["a", "b", "c"], Kind.SIMILARITY)
    with pytest.raises(WrongKind):
        HierarchicalClusterer(k=2).cluster(similarity)


def test_clusterer_rejects_k_above_n():
    with pytest.raises(KOutOfRange):
        HierarchicalClusterer(k=4).cluster(_line([0.0, 1.0, 2.0]))


def test_unknown_linkage():
    with pytest.raises(ValueError):
        HierarchicalClusterer(k=2, linkage="ward")
