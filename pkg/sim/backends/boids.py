"""
Boids flocking scenario.

Each observed time step consists of several synchronous micro-moves in
which every boid

- moves ``cohesion`` of the way toward its flock's centroid,
- moves away from every boid within ``separation_radius`` by half of
  their separation vector (doubling the distance of an isolated pair),
- blends its heading ``alignment`` of the way toward the flock's average
  heading,
- advances ``speed`` along its heading plus the common goal velocity
  (goal, 0, 0).

Every boid starts heading along the goal direction (1, 0, 0), so the
flocks travel on parallel paths. Headings are then unit velocity
estimates from the previous micro-move. At every step after the first,
``switches_per_step`` random boids join a different random flock. A scatter event turns cohesion off and widens the
separation radius; a regroup event merges flocks, mapping flock f to
f * new_count // old_count, and restores cohesion and the radius.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

from affect.errors import BadConfig
from affect.proximity.matrix import ClusterAssignment, Kind
from sim.backends.base import ScenarioBackend, ScenarioStep
from sim.proximity import build_proximity, default_ids

logger = logging.getLogger(__name__)

GOAL_DIRECTION = np.array([1.0, 0.0, 0.0])


@dataclass(frozen=True)
class BoidsConfig:
    flock_sizes: Tuple[int, ...] = (25, 25, 25, 25)
    cube: float = 60.0
    gap: float = 0.0
    cohesion: float = 0.01
    separation_radius: float = 10.0
    alignment: float = 0.125
    speed: float = 1.0
    goal: float = 1.0
    moves_per_step: int = 5
    switches_per_step: int = 1
    T: int = 40
    scatter_at: Optional[int] = None
    scatter_radius: float = 20.0
    regroup_at: Optional[int] = None
    regroup_flocks: Optional[int] = None
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "flock_sizes", tuple(int(s) for s in self.flock_sizes))

        if not self.flock_sizes or any(s < 1 for s in self.flock_sizes):
            raise BadConfig("Every flock needs at least one boid")
        for name in ("cube", "separation_radius", "scatter_radius", "moves_per_step", "T"):
            if getattr(self, name) <= 0:
                raise BadConfig(f"{name} must be positive")
        for name in ("cohesion", "alignment"):
            if not 0 <= getattr(self, name) <= 1:
                raise BadConfig(f"{name} must lie in [0, 1]")
        if self.gap < 0 or self.speed < 0 or self.switches_per_step < 0:
            raise BadConfig("gap, speed and switches_per_step must be nonnegative")

        for name in ("scatter_at", "regroup_at"):
            t = getattr(self, name)
            if t is not None and not 0 < t < self.T:
                raise BadConfig(f"{name}={t} outside horizon 1..{self.T - 1}")
        if (self.regroup_at is None) != (self.regroup_flocks is None):
            raise BadConfig("regroup_at and regroup_flocks go together")
        if self.regroup_flocks is not None and not 1 <= self.regroup_flocks <= len(self.flock_sizes):
            raise BadConfig("regroup_flocks must lie in 1..initial flock count")
        if self.scatter_at is not None and self.regroup_at is not None and self.regroup_at <= self.scatter_at:
            raise BadConfig("Regrouping must come after scattering")

    @property
    def n(self) -> int:
        return sum(self.flock_sizes)


@dataclass(frozen=True, eq=False)
class BoidsStep:
    t: int
    positions: np.ndarray
    memberships: ClusterAssignment


@dataclass
class _Flight:
    positions: np.ndarray
    headings: np.ndarray
    flocks: np.ndarray
    n_flocks: int
    cohesion: float
    radius: float


def _unit(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=-1, keepdims=True)
    return np.divide(vectors, norms, out=np.zeros_like(vectors), where=norms > 0)


def _initial_positions(config: BoidsConfig, rng: np.random.Generator) -> np.ndarray:
    """Flock f fills a cube placed on a two-column grid in the y-z plane."""
    blocks = []
    pitch = config.cube + config.gap
    for f, size in enumerate(config.flock_sizes):
        offset = np.array([0.0, (f % 2) * pitch, (f // 2) * pitch])
        blocks.append(offset + rng.uniform(0.0, config.cube, size=(size, 3)))
    return np.vstack(blocks)


def _micro_move(flight: _Flight, config: BoidsConfig) -> None:
    x = flight.positions
    n = x.shape[0]

    onehot = np.zeros((n, flight.n_flocks))
    onehot[np.arange(n), flight.flocks] = 1.0
    sizes = np.maximum(onehot.sum(axis=0), 1.0)

    centroids = (onehot.T @ x) / sizes[:, None]
    cohesion = flight.cohesion * (centroids[flight.flocks] - x)

    close = squareform(pdist(x)) < flight.radius
    np.fill_diagonal(close, False)
    diff = x[:, None, :] - x[None, :, :]
    separation = 0.5 * np.einsum("ij,ijk->ik", close.astype(float), diff)

    flock_heading = _unit(onehot.T @ flight.headings)
    headings = _unit(
        (1.0 - config.alignment) * flight.headings
        + config.alignment * flock_heading[flight.flocks]
    )

    goal = config.goal * GOAL_DIRECTION
    step = cohesion + separation + config.speed * headings + goal

    flight.positions = x + step
    moved = _unit(step)
    flight.headings = np.where(np.linalg.norm(step, axis=1, keepdims=True) > 0, moved, headings)


def _switch(flight: _Flight, count: int, rng: np.random.Generator) -> None:
    if flight.n_flocks < 2:
        return
    for boid in rng.choice(flight.flocks.size, size=count, replace=False):
        others = [f for f in range(flight.n_flocks) if f != flight.flocks[boid]]
        flight.flocks[boid] = int(rng.choice(others))


def boids_run(
    config: BoidsConfig,
    rng: Optional[np.random.Generator] = None
) -> List[BoidsStep]:
    """
    Simulate T observed steps.

    Step 0 is the initial placement; every later step applies events,
    membership switches and then ``moves_per_step`` micro-moves.
    """

    if rng is None:
        rng = np.random.default_rng(config.seed)

    ids = default_ids(config.n)
    flocks = np.repeat(np.arange(len(config.flock_sizes)), config.flock_sizes)

    flight = _Flight(
        positions=_initial_positions(config, rng),
        headings=np.tile(GOAL_DIRECTION, (config.n, 1)),
        flocks=flocks,
        n_flocks=len(config.flock_sizes),
        cohesion=config.cohesion,
        radius=config.separation_radius,
    )

    steps = [BoidsStep(0, flight.positions.copy(), ClusterAssignment.from_labels(flight.flocks, ids))]

    for t in range(1, config.T):
        if t == config.scatter_at:
            flight.cohesion = 0.0
            flight.radius = config.scatter_radius
            logger.debug(f"t={t}: flocks scatter")

        if t == config.regroup_at:
            old = flight.n_flocks
            flight.flocks = flight.flocks * config.regroup_flocks // old
            flight.n_flocks = config.regroup_flocks
            flight.cohesion = config.cohesion
            flight.radius = config.separation_radius
            logger.debug(f"t={t}: {old} flocks regroup into {config.regroup_flocks}")

        _switch(flight, min(config.switches_per_step, config.n), rng)

        for _ in range(config.moves_per_step):
            _micro_move(flight, config)

        steps.append(BoidsStep(
            t,
            flight.positions.copy(),
            ClusterAssignment.from_labels(flight.flocks, ids),
        ))

    return steps


class BoidsBackend(ScenarioBackend):
    """
    Boids positions turned into distances or Gaussian similarities.
    """

    def __init__(self, config: BoidsConfig, proximity: str = "distance", rho: float = 20.0) -> None:
        if proximity not in ("distance", "gaussian"):
            raise BadConfig(f"Boids proximity must be distance or gaussian, got {proximity!r}")
        self.config = config
        self.proximity = proximity
        self.rho = rho
        self.kind = Kind.DISSIMILARITY if proximity == "distance" else Kind.SIMILARITY

    def generate(self, rng: np.random.Generator) -> List[ScenarioStep]:
        steps = []
        for out in boids_run(self.config, rng):
            matrix = build_proximity(self.proximity, out.positions, rho=self.rho)
            steps.append(ScenarioStep(t=out.t, matrix=matrix, truth=out.memberships))
        return steps

    def describe(self) -> str:
        return f"boids(n={self.config.n}, T={self.config.T}, {self.proximity})"
