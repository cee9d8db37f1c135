"""
Blockwise sample moments of a proximity matrix under a partition.

Under the block model the true proximities and the noise variances are
constant within each cluster-pair block, with separate values on the
diagonal. Sample means and unbiased sample variances over each block
estimate them.

Block kinds, for clusters c and d:

- within off-diagonal: w_lm for distinct l, m in c, |c|(|c|-1) entries
- diagonal: w_ll for l in c, |c| entries
- between: w_lm for l in c, m in d, c != d, |c||d| entries
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from affect.proximity.matrix import ClusterAssignment, ProximityMatrix


@dataclass(frozen=True, eq=False)
class BlockMoments:
    """
    Sample moments per block.

    ``between_mean``, ``between_var`` and ``between_count`` are k x k and
    symmetric; their diagonal holds the within off-diagonal block values, so
    ``between_mean[c, c] == within_offdiag_mean[c]``.
    """

    within_offdiag_mean: np.ndarray
    within_offdiag_var: np.ndarray
    within_count: np.ndarray
    diag_mean: np.ndarray
    diag_var: np.ndarray
    diag_count: np.ndarray
    between_mean: np.ndarray
    between_var: np.ndarray
    between_count: np.ndarray

    @property
    def k(self) -> int:
        return int(self.diag_mean.size)

    def expand(self, clusters: ClusterAssignment) -> Tuple[np.ndarray, np.ndarray]:
        """
        Replicate block values into n x n mean and variance matrices.

        Returns
        -------
        tuple of ndarray
            (E_hat[W], var_hat[W]) in the row order of ``clusters``.
        """

        labels = clusters.labels
        mean = self.between_mean[np.ix_(labels, labels)]
        var = self.between_var[np.ix_(labels, labels)]
        np.fill_diagonal(mean, self.diag_mean[labels])
        np.fill_diagonal(var, self.diag_var[labels])
        return mean, var


def _unbiased(sum_sq: np.ndarray, count: np.ndarray) -> np.ndarray:
    out = np.zeros_like(sum_sq, dtype=float)
    ok = count >= 2
    out[ok] = sum_sq[ok] / (count[ok] - 1)
    return np.maximum(out, 0.0)


def estimate_block_moments(
    current: ProximityMatrix,
    clusters: ClusterAssignment
) -> BlockMoments:
    """
    Sample means and unbiased sample variances over every block.

    Degenerate blocks: a block with a single entry gets that entry as its
    mean and variance 0; an empty within off-diagonal block (singleton
    cluster) gets the global off-diagonal mean and variance 0.

    Parameters
    ----------
    current : ProximityMatrix
        Observed matrix W^t.

    clusters : ClusterAssignment
        Partition of the same objects, in any order.

    Returns
    -------
    BlockMoments
    """

    clusters = clusters.aligned_to(current.ids)
    W = np.asarray(current.values)
    n = W.shape[0]
    H = clusters.one_hot()
    sizes = clusters.sizes().astype(float)

    diag = np.diag(W)
    diag_count = sizes
    diag_mean = (H.T @ diag) / diag_count

    # Off-diagonal sums per block pair; the diagonal of the k x k result
    # covers distinct pairs within a cluster.
    block_sum = H.T @ W @ H - np.diag(H.T @ diag)
    block_count = np.outer(sizes, sizes) - np.diag(sizes)

    if n > 1:
        fallback = (W.sum() - diag.sum()) / (n * (n - 1))
    else:
        fallback = float(diag.sum())

    block_mean = np.full_like(block_sum, fallback)
    filled = block_count > 0
    block_mean[filled] = block_sum[filled] / block_count[filled]

    # Second pass over residuals about the replicated means.
    labels = clusters.labels
    expected = block_mean[np.ix_(labels, labels)]
    np.fill_diagonal(expected, diag_mean[labels])
    residual = (W - expected) ** 2

    residual_diag = np.diag(residual)
    block_ss = H.T @ residual @ H - np.diag(H.T @ residual_diag)
    diag_ss = H.T @ residual_diag

    block_var = _unbiased(block_ss, block_count)
    diag_var = _unbiased(diag_ss, diag_count)

    within = np.arange(clusters.k)
    return BlockMoments(
        within_offdiag_mean=block_mean[within, within].copy(),
        within_offdiag_var=block_var[within, within].copy(),
        within_count=block_count[within, within].copy(),
        diag_mean=diag_mean,
        diag_var=diag_var,
        diag_count=diag_count,
        between_mean=block_mean,
        between_var=block_var,
        between_count=block_count,
    )
