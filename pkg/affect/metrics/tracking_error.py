"""Squared Frobenius tracking error against a known true proximity matrix."""

import numpy as np

from affect.errors import IdMismatch
from affect.proximity.matrix import ProximityMatrix


def mse(estimate: ProximityMatrix, truth: ProximityMatrix) -> float:
    """
    ||estimate - truth||_F^2 summed over all n^2 entries.

    ``truth`` may list the same objects in another order.

    Raises
    ------
    IdMismatch
        If the matrices cover different objects.
    """

    if estimate.ids != truth.ids:
        if set(estimate.ids) != set(truth.ids) or estimate.n != truth.n:
            raise IdMismatch("Estimate and truth cover different objects")
        truth = truth.submatrix(estimate.ids)

    return float(np.sum((np.asarray(estimate.values) - truth.values) ** 2))
