import itertools

import numpy as np
import pytest

from affect.errors import IdMismatch, NonSquare
from affect.metrics import (
    RunMetrics,
    StepMetrics,
    hungarian,
    match_clusters,
    match_to_previous,
    mse,
    rand_index,
)
from affect.proximity.matrix import ClusterAssignment, ProximityMatrix


def _assign(labels, ids=None):
    ids = [str(i) for i in range(len(labels))] if ids is None else ids
    return ClusterAssignment.from_labels(labels, ids)


# ------------------------------------------------------------
# Rand index
# ------------------------------------------------------------

def test_rand_identical_partitions():
    a = _assign([0, 0, 1, 2])
    assert rand_index(a, _assign([2, 2, 0, 1])) == 1.0


def test_rand_crossed_partitions():
    assert rand_index(_assign([0, 0, 1, 1]), _assign([0, 1, 0, 1])) == pytest.approx(1 / 3)


def test_rand_single_disagreeing_pair():
    assert rand_index(_assign([0, 0]), _assign([0, 1])) == 0.0


def test_rand_aligns_object_order():
    a = _assign([0, 0, 1], ["x", "y", "z"])
    b = _assign([1, 0, 0], ["z", "x", "y"])
    assert rand_index(a, b) == 1.0


def test_rand_matches_pair_enumeration(rng):
    for _ in range(30):
        n = int(rng.integers(2, 9))
        la, lb = rng.integers(0, 3, size=n), rng.integers(0, 3, size=n)
        agree = sum(
            (la[i] == la[j]) == (lb[i] == lb[j])
            for i, j in itertools.combinations(range(n), 2)
        )
        expected = agree / (n * (n - 1) / 2)
        assert rand_index(_assign(la), _assign(lb)) == pytest.approx(expected)


def test_rand_needs_two_objects():
    with pytest.raises(ValueError):
        rand_index(_assign([0]), _assign([0]))


def test_rand_different_objects():
    with pytest.raises(IdMismatch):
        rand_index(_assign([0, 1], ["a", "b"]), _assign([0, 1], ["a", "c"]))


# ------------------------------------------------------------
# Tracking error
# ------------------------------------------------------------

def test_mse_zero_for_truth():
    m = ProximityMatrix.build(np.eye(3), ["a", "b", "c"])
    assert mse(m, m) == 0.0


def test_mse_all_ones_difference():
    truth = ProximityMatrix.build(np.zeros((2, 2)), ["a", "b"])
    estimate = ProximityMatrix.build(np.ones((2, 2)), ["a", "b"])
    assert mse(estimate, truth) == 4.0


def test_mse_matches_entrywise_sum(rng):
    a, b = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
    estimate = ProximityMatrix.build(a + a.T, ["a", "b", "c"])
    truth = ProximityMatrix.build(b + b.T, ["a", "b", "c"])
    expected = sum(
        (estimate.values[i, j] - truth.values[i, j]) ** 2
        for i in range(3) for j in range(3)
    )
    assert mse(estimate, truth) == pytest.approx(expected)


def test_mse_reorders_truth():
    estimate = ProximityMatrix.build([[1.0, 2.0], [2.0, 3.0]], ["a", "b"])
    truth = ProximityMatrix.build([[3.0, 2.0], [2.0, 1.0]], ["b", "a"])
    assert mse(estimate, truth) == 0.0


def test_mse_different_objects():
    with pytest.raises(IdMismatch):
        mse(
            ProximityMatrix.build(np.eye(2), ["a", "b"]),
            ProximityMatrix.build(np.eye(2), ["a", "c"]),
        )


# ------------------------------------------------------------
# Matching
# ------------------------------------------------------------

def test_hungarian_identity():
    assert hungarian(np.eye(4)) == [0, 1, 2, 3]


def test_hungarian_trivial():
    assert hungarian([[7.0]]) == [0]
    assert hungarian(np.zeros((0, 0))) == []


def test_hungarian_matches_brute_force(rng):
    for size in range(2, 7):
        weights = rng.integers(0, 10, size=(size, size)).astype(float)
        perm = hungarian(weights)
        best = max(
            sum(weights[i, p[i]] for i in range(size))
            for p in itertools.permutations(range(size))
        )
        assert sorted(perm) == list(range(size))
        assert sum(weights[i, perm[i]] for i in range(size)) == best


def test_hungarian_non_square():
    with pytest.raises(NonSquare):
        hungarian(np.ones((2, 3)))


def test_match_unchanged_when_equal():
    a = _assign([0, 0, 1, 2])
    assert match_clusters(a, a).labels.tolist() == [0, 0, 1, 2]


def test_match_undoes_swap():
    previous = _assign([0, 0, 1, 1])
    current = ClusterAssignment(labels=[1, 1, 0, 0], k=2, ids=previous.ids)
    assert match_clusters(current, previous).labels.tolist() == [0, 0, 1, 1]


def test_match_maximizes_overlap(rng):
    for _ in range(20):
        previous = _assign(rng.permutation(np.arange(9) % 3))
        current = _assign(rng.permutation(np.arange(9) % 3))
        matched = match_clusters(current, previous)
        overlap = int(np.sum(matched.labels == previous.labels))
        best = max(
            int(np.sum(np.asarray(p)[current.labels] == previous.labels))
            for p in itertools.permutations(range(3))
        )
        assert overlap == best
        assert matched.same_partition(current)


def test_match_needs_same_objects():
    with pytest.raises(IdMismatch):
        match_clusters(_assign([0, 1], ["a", "b"]), _assign([0, 1], ["a", "c"]))


def test_match_to_previous_with_extra_cluster():
    previous = _assign([0, 0, 1, 1], ["a", "b", "c", "d"])
    current = _assign([1, 1, 2, 2, 0], ["a", "b", "c", "d", "e"])
    matched = match_to_previous(current, previous)
    # {e} has no previous counterpart and takes the next free label
    assert matched.labels.tolist() == [0, 0, 1, 1, 2]


def test_match_to_previous_with_fewer_clusters():
    previous = _assign([0, 1, 2], ["a", "b", "c"])
    current = _assign([0, 0, 1], ["a", "b", "c"])
    matched = match_to_previous(current, previous)
    assert matched.k == 2
    assert matched.same_partition(current)


# ------------------------------------------------------------
# Run metrics
# ------------------------------------------------------------

def test_run_metrics_summary_and_rows():
    run = RunMetrics(method="affect", run=3, seed=11)
    run.add(StepMetrics(t=0, rand=1.0, mse=2.0, alpha=None, k=2))
    run.add(StepMetrics(t=1, rand=0.5, mse=1.0, alpha=0.4, k=2), iteration_alphas=[0.3, 0.4])

    assert run.summary["mean_rand"] == pytest.approx(0.75)
    assert run.summary["stderr_rand"] == pytest.approx(0.25)
    assert [row["t"] for row in run.rows()] == [0, 1]
    assert run.rows()[1] == {
        "run": 3, "seed": 11, "t": 1, "method": "affect",
        "alpha": 0.4, "k": 2, "rand": 0.5, "mse": 1.0,
    }
    assert [(r["iteration"], r["alpha"]) for r in run.alpha_rows()] == [(1, 0.3), (2, 0.4)]


def test_run_metrics_rejects_invalid_scores():
    run = RunMetrics(method="static", run=0, seed=0)
    with pytest.raises(ValueError):
        run.add(StepMetrics(t=0, rand=1.5, mse=None, alpha=None, k=1))
    with pytest.raises(ValueError):
        run.add(StepMetrics(t=0, rand=None, mse=-1.0, alpha=None, k=1))


def test_run_metrics_without_truth():
    run = RunMetrics(method="static", run=0, seed=0)
    run.add(StepMetrics(t=0, rand=None, mse=None, alpha=None, k=3))
    assert run.summary == {"mean_rand": None, "stderr_rand": None}
