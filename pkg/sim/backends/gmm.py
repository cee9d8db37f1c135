"""
Dynamic Gaussian mixture scenario.

Component memberships are drawn once at t = 0. At every later step the
component means drift according to the configured walks, scheduled
events change covariances or mixture proportions, and a fresh sample of
all n objects is drawn. The observed proximity is the dot-product Gram
matrix of the sample.

Mixture proportions are realised exactly: component c holds round(phi_c n)
objects (largest remainder). A proportion event moves the required number
of objects from shrinking to growing components, chosen uniformly at random.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from affect.errors import BadConfig
from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix
from sim.backends.base import ScenarioBackend, ScenarioStep
from sim.backends.oracle import oracle_moments
from sim.proximity import default_ids, dot_gram

logger = logging.getLogger(__name__)

WALK_MODES = ("random", "linear")


def _as_covariances(value, k: int, p: int) -> np.ndarray:
    """Scalar, per-component scalars, one p x p matrix or k of them."""
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        return np.broadcast_to(arr * np.eye(p), (k, p, p)).copy()
    if arr.ndim == 1 and arr.size == k:
        return arr[:, None, None] * np.eye(p)[None, :, :]
    if arr.shape == (p, p):
        return np.broadcast_to(arr, (k, p, p)).copy()
    if arr.shape == (k, p, p):
        return arr.copy()
    raise BadConfig(f"Cannot read covariances of shape {arr.shape} for k={k}, p={p}")


def _check_covariances(covs: np.ndarray) -> None:
    for c, cov in enumerate(covs):
        if not np.allclose(cov, cov.T, atol=1e-12):
            raise BadConfig(f"Covariance of component {c} is not symmetric")
        if np.linalg.eigvalsh(cov)[0] < -1e-10:
            raise BadConfig(f"Covariance of component {c} is not positive semidefinite")


def _check_weights(weights: Sequence[float], k: int) -> Tuple[float, ...]:
    weights = tuple(float(w) for w in weights)
    if len(weights) != k:
        raise BadConfig(f"{len(weights)} mixture weights for {k} components")
    if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
        raise BadConfig(f"Mixture weights must be nonnegative and sum to 1, got {weights}")
    return weights


@dataclass(frozen=True)
class MeanWalk:
    """
    Drift of component means, applied at steps start..end (inclusive).

    mode "random": each listed component independently moves +step or
    -step along ``dimension``. mode "linear": each listed component moves
    by ``delta``.
    """

    mode: str = "random"
    dimension: int = 0
    step: float = 0.1
    delta: Optional[Tuple[float, ...]] = None
    components: Optional[Tuple[int, ...]] = None
    start: int = 1
    end: Optional[int] = None

    def __post_init__(self) -> None:
        if self.mode not in WALK_MODES:
            raise BadConfig(f"Unknown walk mode {self.mode!r}; expected one of {WALK_MODES}")
        if self.mode == "linear" and self.delta is None:
            raise BadConfig("A linear walk needs a delta vector")
        if self.start < 1:
            raise BadConfig("Walks start at t >= 1")
        if self.delta is not None:
            object.__setattr__(self, "delta", tuple(float(d) for d in self.delta))
        if self.components is not None:
            object.__setattr__(self, "components", tuple(int(c) for c in self.components))

    def active(self, t: int) -> bool:
        return t >= self.start and (self.end is None or t <= self.end)

    def apply(self, means: np.ndarray, rng: np.random.Generator) -> None:
        components = range(means.shape[0]) if self.components is None else self.components
        for c in components:
            if self.mode == "random":
                means[c, self.dimension] += self.step * rng.choice((-1.0, 1.0))
            else:
                means[c] += np.asarray(self.delta)


@dataclass(frozen=True, eq=False)
class GmmEvent:
    """Covariances and/or mixture weights that take effect at step t."""

    t: int
    covariances: Optional[object] = None
    weights: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True, eq=False)
class DynamicGmmConfig:
    """
    Parameters of a dynamic Gaussian mixture.

    ``covariances`` accepts a scalar (times identity), one scalar per
    component, one p x p matrix or k of them.
    """

    means: np.ndarray
    covariances: object
    weights: Tuple[float, ...]
    n: int
    T: int
    walks: Tuple[MeanWalk, ...] = field(default_factory=tuple)
    events: Tuple[GmmEvent, ...] = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self) -> None:
        means = np.array(self.means, dtype=float, copy=True)
        if means.ndim != 2 or means.shape[0] < 1:
            raise BadConfig("Means must be a k x p array")
        k, p = means.shape
        covs = _as_covariances(self.covariances, k, p)
        _check_covariances(covs)

        object.__setattr__(self, "means", means)
        object.__setattr__(self, "covariances", covs)
        object.__setattr__(self, "weights", _check_weights(self.weights, k))
        object.__setattr__(self, "walks", tuple(self.walks))

        if self.n < 1 or self.T < 1:
            raise BadConfig("Sample count n and horizon T must be positive")

        events = []
        for event in self.events:
            if not 0 <= event.t < self.T:
                raise BadConfig(f"Event at t={event.t} outside horizon 0..{self.T - 1}")
            covs_t = None
            if event.covariances is not None:
                covs_t = _as_covariances(event.covariances, k, p)
                _check_covariances(covs_t)
            weights_t = None if event.weights is None else _check_weights(event.weights, k)
            events.append(GmmEvent(t=event.t, covariances=covs_t, weights=weights_t))
        object.__setattr__(self, "events", tuple(sorted(events, key=lambda e: e.t)))

        for walk in self.walks:
            if walk.mode == "random" and not 0 <= walk.dimension < p:
                raise BadConfig(f"Walk dimension {walk.dimension} outside 0..{p - 1}")
            if walk.mode == "linear" and len(walk.delta) != p:
                raise BadConfig(f"Walk delta has {len(walk.delta)} entries for p={p}")
            if walk.components is not None and any(not 0 <= c < k for c in walk.components):
                raise BadConfig(f"Walk names a component outside 0..{k - 1}")

    @property
    def k(self) -> int:
        return self.means.shape[0]

    @property
    def p(self) -> int:
        return self.means.shape[1]


@dataclass(frozen=True, eq=False)
class GmmStepOutput:
    t: int
    features: np.ndarray
    similarity: ProximityMatrix
    memberships: ClusterAssignment
    oracle_psi: ProximityMatrix
    oracle_var: np.ndarray
    means: np.ndarray
    covariances: np.ndarray

    @property
    def matrix(self) -> ProximityMatrix:
        return self.similarity

    def to_step(self) -> ScenarioStep:
        return ScenarioStep(
            t=self.t,
            matrix=self.similarity,
            truth=self.memberships,
            oracle_psi=self.oracle_psi,
            oracle_var=self.oracle_var,
        )


# ------------------------------------------------------------
# Memberships
# ------------------------------------------------------------

def component_counts(weights: Sequence[float], n: int) -> np.ndarray:
    """round(phi_c n) by largest remainder; ties go to the lower component."""
    raw = np.asarray(weights, dtype=float) * n
    counts = np.floor(raw).astype(int)
    remainder = raw - counts
    order = np.argsort(-remainder, kind="stable")
    counts[order[: n - counts.sum()]] += 1
    return counts


def _rebalance(
    labels: np.ndarray,
    target: np.ndarray,
    rng: np.random.Generator
) -> np.ndarray:
    labels = labels.copy()
    current = np.bincount(labels, minlength=target.size)

    pool = []
    for c in np.flatnonzero(current > target):
        members = np.flatnonzero(labels == c)
        pool.extend(rng.choice(members, size=current[c] - target[c], replace=False).tolist())
    pool = rng.permutation(np.asarray(pool, dtype=int))

    cursor = 0
    for c in np.flatnonzero(current < target):
        need = target[c] - current[c]
        labels[pool[cursor:cursor + need]] = c
        cursor += need

    return labels


def _sample(
    means: np.ndarray,
    covs: np.ndarray,
    labels: np.ndarray,
    rng: np.random.Generator
) -> np.ndarray:
    n, p = labels.size, means.shape[1]
    noise = rng.standard_normal((n, p))
    features = means[labels].copy()
    for c in range(means.shape[0]):
        rows = labels == c
        if not rows.any():
            continue
        eigvals, eigvecs = np.linalg.eigh(covs[c])
        root = eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))
        features[rows] += noise[rows] @ root.T
    return features


# ------------------------------------------------------------
# Generator
# ------------------------------------------------------------

def gmm_run(
    config: DynamicGmmConfig,
    rng: Optional[np.random.Generator] = None
) -> List[GmmStepOutput]:
    """
    Generate T steps of the dynamic mixture.

    Parameters
    ----------
    config : DynamicGmmConfig
    rng : numpy.random.Generator, optional
        Defaults to a generator seeded with ``config.seed``.
    """

    if rng is None:
        rng = np.random.default_rng(config.seed)

    means = config.means.copy()
    covs = config.covariances.copy()
    ids = default_ids(config.n)

    labels = rng.permutation(np.repeat(np.arange(config.k), component_counts(config.weights, config.n)))
    events = {event.t: event for event in config.events}

    outputs = []
    for t in range(config.T):
        for walk in config.walks:
            if walk.active(t):
                walk.apply(means, rng)

        event = events.get(t)
        if event is not None:
            if event.covariances is not None:
                covs = event.covariances.copy()
                logger.debug(f"t={t}: covariances changed")
            if event.weights is not None:
                labels = _rebalance(labels, component_counts(event.weights, config.n), rng)
                logger.debug(f"t={t}: mixture weights set to {event.weights}")

        features = _sample(means, covs, labels, rng)
        psi, var = oracle_moments(means, covs, labels, ids=ids)

        outputs.append(GmmStepOutput(
            t=t,
            features=features,
            similarity=dot_gram(features, ids),
            memberships=ClusterAssignment.from_labels(labels, ids),
            oracle_psi=psi,
            oracle_var=var,
            means=means.copy(),
            covariances=covs.copy(),
        ))

    return outputs


class GmmBackend(ScenarioBackend):
    """Dynamic Gaussian mixture with dot-product similarities."""

    kind = Kind.SIMILARITY
    has_oracle = True

    def __init__(self, config: DynamicGmmConfig) -> None:
        self.config = config

    def generate(self, rng: np.random.Generator) -> List[ScenarioStep]:
        return [out.to_step() for out in gmm_run(self.config, rng)]

    def describe(self) -> str:
        c = self.config
        return f"gmm(k={c.k}, p={c.p}, n={c.n}, T={c.T})"
