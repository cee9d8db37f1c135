"""Dense symmetric eigendecomposition with a deterministic sign convention."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from affect.errors import NoConvergence, NonSquare


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues in ascending order and the matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray

    def top(self, k: int) -> np.ndarray:
        """Eigenvectors of the k largest eigenvalues, largest first."""
        return self.vectors[:, ::-1][:, :k]

    def bottom(self, k: int) -> np.ndarray:
        """Eigenvectors of the k smallest eigenvalues, smallest first."""
        return self.vectors[:, :k]


def eigh(a) -> EigenDecomposition:
    """
    Full eigendecomposition of a symmetric matrix.

    Each eigenvector is flipped so its largest-magnitude entry is positive
    (the first such entry on ties).

    Raises
    ------
    NonSquare
        If ``a`` is not square.
    NoConvergence
        If the LAPACK driver fails to converge.
    """

    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"eigh needs a square matrix, got shape {a.shape}")

    try:
        values, vectors = scipy.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"Eigendecomposition did not converge: {exc}") from exc

    if vectors.size:
        pivot = np.argmax(np.abs(vectors), axis=0)
        signs = np.sign(vectors[pivot, np.arange(vectors.shape[1])])
        signs[signs == 0] = 1.0
        vectors = vectors * signs

    return EigenDecomposition(values=values, vectors=vectors)
