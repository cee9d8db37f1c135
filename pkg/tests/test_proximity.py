import numpy as np
import pytest

from affect.errors import (
    AsymmetricMatrix,
    DimensionMismatch,
    EmptyIntersection,
    IdMismatch,
    NegativeDissimilarity,
)
from affect.proximity import ClusterAssignment, Kind, ObjectRegistry, ProximityMatrix, align_state


# ------------------------------------------------------------
# ProximityMatrix
# ------------------------------------------------------------

def test_identity_similarity_is_valid():
    m = ProximityMatrix.build(np.eye(2), ["a", "b"], Kind.SIMILARITY)
    assert m.n == 2
    np.testing.assert_array_equal(m.values, np.eye(2))


def test_asymmetric_dissimilarity_rejected():
    with pytest.raises(AsymmetricMatrix):
        ProximityMatrix.build([[0, 1], [2, 0]], ["a", "b"], Kind.DISSIMILARITY)


def test_negative_dissimilarity_rejected():
    with pytest.raises(NegativeDissimilarity):
        ProximityMatrix.build([[0, -1], [-1, 0]], ["a", "b"], Kind.DISSIMILARITY)


def test_nonzero_dissimilarity_diagonal_rejected():
    with pytest.raises(NegativeDissimilarity):
        ProximityMatrix.build([[1, 2], [2, 0]], ["a", "b"], Kind.DISSIMILARITY)


def test_small_asymmetry_is_symmetrized():
    m = ProximityMatrix.build([[1.0, 2.0], [2.0 + 1e-10, 1.0]], ["a", "b"])
    assert m.values[0, 1] == m.values[1, 0]
    assert m.values[0, 1] == pytest.approx(2.0 + 5e-11)


@pytest.mark.parametrize("values, ids", [
    (np.ones((2, 3)), ["a", "b"]),
    (np.eye(2), ["a"]),
    (np.eye(2), ["a", "a"]),
    (np.zeros((0, 0)), []),
    ([[1.0, np.nan], [np.nan, 1.0]], ["a", "b"]),
])
def test_shape_and_id_errors(values, ids):
    with pytest.raises(DimensionMismatch):
        ProximityMatrix.build(values, ids)


def test_values_are_read_only():
    m = ProximityMatrix.build(np.eye(2), ["a", "b"])
    with pytest.raises(ValueError):
        m.values[0, 0] = 5.0


def test_submatrix_follows_requested_order():
    values = np.arange(9, dtype=float).reshape(3, 3)
    m = ProximityMatrix.build(values + values.T, ["a", "b", "c"])
    sub = m.submatrix(["c", "a"])
    assert sub.ids == ("c", "a")
    np.testing.assert_array_equal(sub.values, [[16.0, 8.0], [8.0, 0.0]])


def test_submatrix_unknown_id():
    m = ProximityMatrix.build(np.eye(2), ["a", "b"])
    with pytest.raises(IdMismatch):
        m.submatrix(["a", "z"])


def test_kind_parse():
    assert Kind.parse("Dissimilarity") is Kind.DISSIMILARITY
    with pytest.raises(ValueError):
        Kind.parse("distance")


# ------------------------------------------------------------
# ClusterAssignment
# ------------------------------------------------------------

def test_from_labels_compacts_in_order():
    a = ClusterAssignment.from_labels([5, 5, 2, 9], ["a", "b", "c", "d"])
    assert a.k == 3
    assert a.labels.tolist() == [1, 1, 0, 2]


def test_empty_cluster_rejected():
    with pytest.raises(ValueError):
        ClusterAssignment(labels=[0, 0, 2], k=3, ids=["a", "b", "c"])


def test_label_count_must_match_ids():
    with pytest.raises(DimensionMismatch):
        ClusterAssignment(labels=[0, 1], k=2, ids=["a", "b", "c"])


def test_restrict_compacts_labels():
    a = ClusterAssignment.from_labels([0, 1, 2, 2], ["a", "b", "c", "d"])
    sub = a.restrict(["c", "a"])
    assert sub.ids == ("c", "a")
    assert sub.labels.tolist() == [1, 0]
    assert sub.k == 2


def test_aligned_to_and_same_partition():
    a = ClusterAssignment.from_labels([0, 0, 1], ["a", "b", "c"])
    b = ClusterAssignment.from_labels([1, 0, 0], ["c", "a", "b"])
    assert a.same_partition(b)
    assert b.aligned_to(a.ids).labels.tolist() == [0, 0, 1]

    c = ClusterAssignment.from_labels([0, 1, 1], ["a", "b", "c"])
    assert not a.same_partition(c)


def test_aligned_to_different_objects():
    a = ClusterAssignment.from_labels([0, 1], ["a", "b"])
    with pytest.raises(IdMismatch):
        a.aligned_to(["a", "z"])


def test_one_hot_and_clusters():
    a = ClusterAssignment.from_labels([1, 0, 1], ["a", "b", "c"])
    np.testing.assert_array_equal(a.one_hot(), [[0, 1], [1, 0], [0, 1]])
    assert a.clusters() == [["b"], ["a", "c"]]
    assert a.sizes().tolist() == [1, 2]


# ------------------------------------------------------------
# Registry
# ------------------------------------------------------------

def test_registry_tracks_arrivals_and_departures():
    registry = ObjectRegistry()
    assert registry.observe(["a", "b"]) == (["a", "b"], [])
    assert registry.observe(["b", "c"]) == (["c"], ["a"])
    assert registry.active_ids() == ("b", "c")
    assert registry.generation == 2

    # unchanged step leaves the generation alone
    registry.observe(["c", "b"])
    assert registry.generation == 2


def test_returning_object_counts_as_new():
    registry = ObjectRegistry()
    registry.observe(["a", "b"])
    registry.observe(["b"])
    added, removed = registry.observe(["a", "b"])
    assert added == ["a"]
    assert removed == []
    assert registry.active_ids() == ("a", "b")
    assert len(registry) == 2


def test_registry_rejects_duplicates():
    with pytest.raises(ValueError):
        ObjectRegistry().observe(["a", "a"])


# ------------------------------------------------------------
# Alignment
# ------------------------------------------------------------

def _matrix(ids):
    n = len(ids)
    values = np.arange(n * n, dtype=float).reshape(n, n)
    return ProximityMatrix.build(values + values.T, ids)


def test_align_identical_ids():
    prev = _matrix(["a", "b", "c"])
    restricted, new_ids = align_state(prev, _matrix(["a", "b", "c"]))
    assert restricted is prev
    assert new_ids == []


def test_align_departure_only():
    prev = _matrix(["a", "b", "c"])
    restricted, new_ids = align_state(prev, _matrix(["a", "c"]))
    assert restricted.ids == ("a", "c")
    np.testing.assert_array_equal(restricted.values, prev.submatrix(["a", "c"]).values)
    assert new_ids == []


def test_align_departures_and_arrivals():
    prev = _matrix(["a", "b"])
    restricted, new_ids = align_state(prev, _matrix(["b", "c", "d"]))
    assert restricted.ids == ("b",)
    assert restricted.values[0, 0] == prev.values[1, 1]
    assert new_ids == ["c", "d"]


def test_align_without_shared_objects():
    with pytest.raises(EmptyIntersection):
        align_state(_matrix(["a", "b"]), _matrix(["c"]))


def test_align_follows_current_order(rng):
    prev = _matrix(["a", "b", "c", "d", "e"])
    current = _matrix(["e", "x", "b", "d", "y", "a"])
    restricted, new_ids = align_state(prev, current)

    order = rng.permutation(len(current.ids))
    reordered = current.submatrix([current.ids[i] for i in order])
    permuted, permuted_new = align_state(prev, reordered)

    shared_order = [obj for obj in reordered.ids if obj in restricted.ids]
    assert permuted.ids == tuple(shared_order)
    np.testing.assert_array_equal(permuted.values, restricted.submatrix(shared_order).values)
    assert sorted(permuted_new) == sorted(new_ids) == ["x", "y"]


def test_align_is_idempotent():
    prev = _matrix(["a", "b", "c", "d"])
    current = _matrix(["d", "b", "z"])
    restricted, new_ids = align_state(prev, current)
    again, again_new = align_state(restricted, current)
    assert again.ids == restricted.ids
    np.testing.assert_array_equal(again.values, restricted.values)
    assert again_new == new_ids
