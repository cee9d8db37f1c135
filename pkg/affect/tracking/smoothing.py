"""
Recursive smoothing of proximity matrices.

    psi_hat^t = alpha^t * psi_hat^(t-1) + (1 - alpha^t) * W^t,  psi_hat^0 = W^0
"""

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from affect.errors import AlphaOutOfRange
from affect.proximity.matrix import ProximityMatrix


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0 or np.isnan(alpha):
        raise AlphaOutOfRange(f"Forgetting factor must lie in [0, 1], got {alpha}")
    return alpha


@dataclass(frozen=True, eq=False)
class SmoothedState:
    """
    Running estimate of the true proximity matrix for one stream.

    ``alpha_history`` holds the forgetting factors applied at steps 1..t.
    """

    psi_hat: ProximityMatrix
    alpha_history: Tuple[float, ...] = field(default_factory=tuple)
    t: int = 0

    def __post_init__(self) -> None:
        history = tuple(_check_alpha(a) for a in self.alpha_history)
        object.__setattr__(self, "alpha_history", history)

    @classmethod
    def initial(cls, first: ProximityMatrix) -> "SmoothedState":
        """psi_hat^0 = W^0."""
        return cls(psi_hat=first, alpha_history=(), t=0)

    def advance(self, psi_hat: ProximityMatrix, alpha: float) -> "SmoothedState":
        return SmoothedState(
            psi_hat=psi_hat,
            alpha_history=self.alpha_history + (alpha,),
            t=self.t + 1
        )


def smooth_update(
    prev: ProximityMatrix,
    current: ProximityMatrix,
    alpha: float
) -> ProximityMatrix:
    """
    Convex combination alpha * prev + (1 - alpha) * current.

    Raises
    ------
    AlphaOutOfRange
        If alpha is outside [0, 1].
    IdMismatch
        If the matrices index different objects.
    """

    alpha = _check_alpha(alpha)
    prev.require_same_ids(current)

    if alpha == 0.0:
        return current
    if alpha == 1.0:
        return current.with_values(prev.values)

    values = alpha * prev.values + (1.0 - alpha) * current.values
    return current.with_values(values)


def expanded_weights(alpha_history: Sequence[float]) -> List[float]:
    """
    Weights beta^s on W^s, s = 0..t, of the unrolled recursion.

    beta^t = 1 - alpha^t, beta^s = (1 - alpha^s) * prod_{r>s} alpha^r for
    0 < s < t, and beta^0 = prod_{r=1..t} alpha^r. The weights sum to one.

    Parameters
    ----------
    alpha_history : sequence of float
        alpha^1, ..., alpha^t.

    Returns
    -------
    list of float
        beta^0, ..., beta^t.
    """

    alphas = [_check_alpha(a) for a in alpha_history]
    t = len(alphas)

    weights = [0.0] * (t + 1)
    tail = 1.0  # prod of alpha^r for r > s
    for s in range(t, 0, -1):
        a = alphas[s - 1]
        weights[s] = (1.0 - a) * tail
        tail *= a
    weights[0] = tail

    return weights
