import numpy as np
import pytest

from affect.errors import BadConfig
from affect.proximity.matrix import Kind
from sim.backends.boids import BoidsBackend, BoidsConfig, boids_run


def _small(**overrides):
    params = dict(flock_sizes=(6, 6, 6, 6), T=6, moves_per_step=3)
    params.update(overrides)
    return BoidsConfig(**params)


@pytest.mark.parametrize("overrides", [
    {"flock_sizes": (5, 0)},
    {"cohesion": 1.5},
    {"scatter_at": 6},
    {"regroup_at": 3},
    {"scatter_at": 4, "regroup_at": 3, "regroup_flocks": 2},
    {"regroup_at": 3, "regroup_flocks": 5},
    {"moves_per_step": 0},
])
def test_invalid_configs(overrides):
    with pytest.raises(BadConfig):
        _small(**overrides)


def test_defaults():
    config = BoidsConfig()
    assert config.n == 100
    assert config.T == 40
    assert config.cube == 60.0


def test_initial_cubes():
    config = _small()
    first = boids_run(config, np.random.default_rng(0))[0]
    labels = first.memberships.labels
    for f in range(4):
        block = first.positions[labels == f]
        low = np.array([0.0, (f % 2) * 60.0, (f // 2) * 60.0])
        assert np.all(block >= low) and np.all(block <= low + 60.0)


def test_one_switch_per_step():
    steps = boids_run(_small(), np.random.default_rng(1))
    assert len(steps) == 6
    for prev, cur in zip(steps, steps[1:]):
        changed = np.sum(prev.memberships.labels != cur.memberships.labels)
        assert changed == 1


def test_no_switches_keeps_memberships():
    steps = boids_run(_small(switches_per_step=0), np.random.default_rng(1))
    assert all(s.memberships.same_partition(steps[0].memberships) for s in steps)


def test_goal_drives_the_swarm():
    # Cohesion and separation cancel over the swarm; without speed only the goal moves it.
    config = _small(speed=0.0, goal=2.0, switches_per_step=0)
    steps = boids_run(config, np.random.default_rng(2))
    shift = steps[1].positions.mean(axis=0) - steps[0].positions.mean(axis=0)
    np.testing.assert_allclose(shift, [2.0 * 3, 0.0, 0.0], atol=1e-9)


def test_regroup_merges_flocks():
    config = _small(scatter_at=2, regroup_at=4, regroup_flocks=2, switches_per_step=0)
    steps = boids_run(config, np.random.default_rng(3))
    assert steps[3].memberships.k == 4
    assert steps[4].memberships.k == 2
    labels = steps[4].memberships.labels
    # flocks 0, 1 -> 0 and 2, 3 -> 1
    assert labels[:12].tolist() == [0] * 12
    assert labels[12:].tolist() == [1] * 12


def test_same_generator_state_reproduces_run():
    a = boids_run(_small(), np.random.default_rng(9))
    b = boids_run(_small(), np.random.default_rng(9))
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x.positions, y.positions)


@pytest.mark.parametrize("proximity, kind", [("distance", Kind.DISSIMILARITY), ("gaussian", Kind.SIMILARITY)])
def test_backend_kinds(proximity, kind):
    backend = BoidsBackend(_small(T=2), proximity=proximity, rho=20.0)
    steps = backend.generate(np.random.default_rng(0))
    assert backend.kind is kind
    assert steps[0].matrix.kind is kind
    assert steps[0].truth.k == 4
    assert steps[0].oracle_psi is None


def test_backend_rejects_unknown_proximity():
    with pytest.raises(BadConfig):
        BoidsBackend(_small(), proximity="dot")


def test_cohesion_alone_contracts_each_flock():
    config = _small(speed=0.0, goal=0.0, alignment=0.0, separation_radius=1e-9,
                    switches_per_step=0, cohesion=0.05)
    steps = boids_run(config, np.random.default_rng(4))
    labels = steps[0].memberships.labels
    shrink = (1.0 - config.cohesion) ** config.moves_per_step

    for prev, cur in zip(steps, steps[1:]):
        for f in range(4):
            before = prev.positions[labels == f]
            after = cur.positions[labels == f]
            np.testing.assert_allclose(after.mean(axis=0), before.mean(axis=0), atol=1e-9)
            np.testing.assert_allclose(
                after - after.mean(axis=0), shrink * (before - before.mean(axis=0)), atol=1e-9
            )


@pytest.mark.parametrize("overrides", [
    {},
    {"T": 10, "scatter_at": 3, "regroup_at": 6, "regroup_flocks": 2},
    {"T": 10, "scatter_at": 4},
])
def test_positions_finite_and_every_boid_in_a_flock(overrides):
    config = _small(**overrides)
    for step in boids_run(config, np.random.default_rng(5)):
        assert np.all(np.isfinite(step.positions))
        assert step.positions.shape == (config.n, 3)
        assert step.memberships.n == config.n
        assert int(step.memberships.sizes().sum()) == config.n


def test_flocks_travel_on_parallel_paths():
    steps = boids_run(BoidsConfig(switches_per_step=0), np.random.default_rng(6))
    labels = steps[0].memberships.labels

    def centroids(step):
        return np.array([step.positions[labels == f].mean(axis=0) for f in range(4)])

    def closest_pair(points):
        return min(np.linalg.norm(a - b) for i, a in enumerate(points) for b in points[i + 1:])

    start = centroids(steps[0])
    for step in steps[1:]:
        assert closest_pair(centroids(step)) > 0.75 * closest_pair(start)

    drift = centroids(steps[-1]) - start
    assert np.all(drift[:, 0] > 2.0 * np.linalg.norm(drift[:, 1:], axis=1))
