"""
True proximities and noise variances of dot products under a Gaussian
mixture, and the forgetting factor computed from them.

For x_i ~ N(mu_c, S_c) and x_j ~ N(mu_d, S_d) independent (i != j):

    E[x_i . x_j]   = mu_c . mu_d
    var[x_i . x_j] = tr(S_c S_d) + mu_d^T S_c mu_d + mu_c^T S_d mu_c

and for a single x_i ~ N(mu_c, S_c):

    E[x_i . x_i]   = tr(S_c) + ||mu_c||^2
    var[x_i . x_i] = 4 mu_c^T S_c mu_c + 2 tr(S_c^2)
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from affect.errors import DimensionMismatch
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix
from affect.tracking.forgetting import forgetting_factor
from affect.tracking.smoothing import smooth_update


def component_moments(means, covariances) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Moments per component pair.

    Returns
    -------
    tuple of ndarray
        (between mean k x k, between variance k x k, diagonal mean k,
        diagonal variance k).
    """

    mu = np.asarray(means, dtype=float)
    sigma = np.asarray(covariances, dtype=float)
    if mu.ndim != 2 or sigma.shape != (mu.shape[0], mu.shape[1], mu.shape[1]):
        raise DimensionMismatch(
            f"Means {mu.shape} and covariances {sigma.shape} disagree"
        )

    off_mean = mu @ mu.T
    # tr(S_c S_d) = sum_kl S_ckl S_dkl for symmetric S
    trace_cross = np.einsum("ckl,dkl->cd", sigma, sigma)
    quad = np.einsum("dk,ckl,dl->cd", mu, sigma, mu)  # mu_d^T S_c mu_d
    off_var = trace_cross + quad + quad.T

    diag_mean = np.trace(sigma, axis1=1, axis2=2) + np.sum(mu ** 2, axis=1)
    diag_var = 4.0 * np.diag(quad) + 2.0 * np.einsum("ckl,ckl->c", sigma, sigma)

    return off_mean, off_var, diag_mean, diag_var


def oracle_moments(
    means,
    covariances,
    memberships,
    ids: Optional[Sequence[str]] = None
) -> Tuple[ProximityMatrix, np.ndarray]:
    """
    Expected dot-product matrix and its entrywise variance.

    Parameters
    ----------
    means : array-like, k x p
    covariances : array-like, k x p x p
    memberships : ClusterAssignment or array of component indices

    Returns
    -------
    tuple
        (psi as a similarity ProximityMatrix, n x n variance array).

    Raises
    ------
    DimensionMismatch
        If the shapes disagree or a membership names a missing component.
    """

    if isinstance(memberships, ClusterAssignment):
        labels = np.asarray(memberships.labels)
        ids = memberships.ids if ids is None else ids
    else:
        labels = np.asarray(memberships, dtype=int)

    off_mean, off_var, diag_mean, diag_var = component_moments(means, covariances)
    k = off_mean.shape[0]
    if labels.size and (labels.min() < 0 or labels.max() >= k):
        raise DimensionMismatch(f"Membership outside the {k} mixture components")

    n = labels.size
    ids = tuple(str(i) for i in range(n)) if ids is None else tuple(ids)

    psi = off_mean[np.ix_(labels, labels)]
    var = off_var[np.ix_(labels, labels)]
    idx = np.arange(n)
    psi[idx, idx] = diag_mean[labels]
    var[idx, idx] = diag_var[labels]

    return ProximityMatrix(kind=Kind.SIMILARITY, values=psi, ids=ids), var


@dataclass(frozen=True, eq=False)
class OracleTrack:
    """
    Forgetting factors alpha*^1..alpha*^(T-1) and the smoothed matrices
    psi_hat^0..psi_hat^(T-1) they produce.
    """

    alphas: Tuple[float, ...]
    smoothed: Tuple[ProximityMatrix, ...]


def oracle_track(steps: Sequence) -> OracleTrack:
    """
    Run the smoothing recursion with the oracle forgetting factor.

    Each step must expose ``matrix`` (W^t), ``oracle_psi`` and
    ``oracle_var``. At every t >= 1 the factor is computed from the true
    psi^t, the noise variance and the running smoothed psi_hat^(t-1).
    """

    if not steps:
        return OracleTrack(alphas=(), smoothed=())

    psi_hat = steps[0].matrix
    smoothed: List[ProximityMatrix] = [psi_hat]
    alphas: List[float] = []

    for step in steps[1:]:
        if step.oracle_psi is None or step.oracle_var is None:
            raise ValueError(f"Step {step.t} carries no true moments")

        estimate = forgetting_factor(
            psi_hat.values, step.oracle_psi.values, step.oracle_var
        )
        psi_hat = smooth_update(psi_hat, step.matrix, estimate.alpha)
        alphas.append(estimate.alpha)
        smoothed.append(psi_hat)

    return OracleTrack(alphas=tuple(alphas), smoothed=tuple(smoothed))


def oracle_alpha_run(steps: Sequence) -> List[float]:
    """Oracle forgetting factors for t = 1..T-1."""
    return list(oracle_track(steps).alphas)
