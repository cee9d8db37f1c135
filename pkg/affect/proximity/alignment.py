"""
Alignment of the smoothed matrix with the objects observed at a new step.

Objects that left are dropped from the previous smoothed matrix; objects
that arrived are reported so the caller can append their raw rows and
columns after smoothing.
"""

from typing import List, Tuple

from affect.errors import EmptyIntersection
from affect.proximity.matrix import ProximityMatrix


def align_state(
    prev_smoothed: ProximityMatrix,
    current: ProximityMatrix
) -> Tuple[ProximityMatrix, List[str]]:
    """
    Restrict the previous smoothed matrix to the objects still present.

    Parameters
    ----------
    prev_smoothed : ProximityMatrix
        Smoothed matrix from the previous time step.

    current : ProximityMatrix
        Observed matrix at the current time step.

    Returns
    -------
    tuple
        ``(prev_restricted, new_ids)`` where ``prev_restricted`` holds the
        rows/columns of ``prev_smoothed`` whose ids appear in ``current``,
        in ``current``'s order, and ``new_ids`` lists ids of ``current``
        absent from ``prev_smoothed``.

    Raises
    ------
    EmptyIntersection
        If no id is shared; the caller restarts smoothing from ``current``.
    """

    if prev_smoothed.ids == current.ids:
        return prev_smoothed, []

    previous = set(prev_smoothed.ids)
    shared = [obj for obj in current.ids if obj in previous]
    new_ids = [obj for obj in current.ids if obj not in previous]

    if not shared:
        raise EmptyIntersection(
            "No object is shared with the previous time step"
        )

    return prev_smoothed.submatrix(shared), new_ids
