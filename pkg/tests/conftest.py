"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix
from tests.helpers import block_values, ids_for


@pytest.fixture
def make_similarity():
    def _make(values, ids=None):
        values = np.asarray(values, dtype=float)
        ids = ids_for(values.shape[0]) if ids is None else ids
        return ProximityMatrix.build(values, ids, Kind.SIMILARITY)
    return _make


@pytest.fixture
def make_dissimilarity():
    def _make(values, ids=None):
        values = np.asarray(values, dtype=float)
        ids = ids_for(values.shape[0]) if ids is None else ids
        return ProximityMatrix.build(values, ids, Kind.DISSIMILARITY)
    return _make


@pytest.fixture
def two_blocks():
    """4 x 4 similarity, clusters {o0, o1} and {o2, o3}; within 5, between 1, diagonal 7."""
    ids = ids_for(4)
    matrix = ProximityMatrix.build(block_values([2, 2], 5.0, 1.0, 7.0), ids)
    truth = ClusterAssignment.from_labels([0, 0, 1, 1], ids)
    return matrix, truth


@pytest.fixture
def separated_points():
    """Two tight, far apart groups of three 2-D points."""
    points = np.array([
        [0.0, 0.0], [0.3, 0.1], [0.1, 0.4],
        [10.0, 10.0], [10.2, 9.9], [9.8, 10.3],
    ])
    labels = np.array([0, 0, 0, 1, 1, 1])
    return points, labels


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
