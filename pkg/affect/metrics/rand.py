"""Rand index between two partitions of the same objects."""

from sklearn.metrics import rand_score

from affect.proximity.matrix import ClusterAssignment


def rand_index(a: ClusterAssignment, b: ClusterAssignment) -> float:
    """
    Fraction of object pairs on which two partitions agree.

    A pair agrees when both partitions put it in the same cluster or both
    put it in different clusters.

    Raises
    ------
    IdMismatch
        If the assignments cover different objects.
    ValueError
        If fewer than two objects are given.
    """

    b = b.aligned_to(a.ids)
    if a.n < 2:
        raise ValueError("Rand index needs at least two objects")
    return float(rand_score(a.labels, b.labels))
