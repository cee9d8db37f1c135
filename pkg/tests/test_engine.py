import importlib.util
from pathlib import Path

import numpy as np
import pytest

from affect.config import parse_config
from affect.monte_carlo.engine import (
    CLUSTERER_STREAM,
    SCENARIO_STREAM,
    TRAINING_STREAM,
    get_scenario_backend,
    replicate_rng,
    replicate_seed,
    run_replication,
    run_replications,
)
from sim.backends.gmm import GmmBackend
from tests.helpers import small_gmm_config


def _config(tmp_path, **top):
    return parse_config(small_gmm_config(**top), base_dir=tmp_path)


def test_replicate_streams_are_reproducible():
    a = replicate_rng(7, 3).random(5)
    b = replicate_rng(7, 3).random(5)
    np.testing.assert_array_equal(a, b)

    others = [
        replicate_rng(7, 4).random(5),
        replicate_rng(8, 3).random(5),
        replicate_rng(7, 3, TRAINING_STREAM).random(5),
    ]
    for other in others:
        assert not np.allclose(a, other)


def test_replicate_seed():
    seed = replicate_seed(0, 1)
    assert isinstance(seed, int)
    assert seed == replicate_seed(0, 1, CLUSTERER_STREAM)
    assert seed != replicate_seed(0, 2)
    assert replicate_seed(0, 1, SCENARIO_STREAM) != seed


def test_backend_factory(tmp_path):
    config = _config(tmp_path)
    assert isinstance(get_scenario_backend(config.scenario), GmmBackend)


def test_replication_runs_every_method(tmp_path):
    config = _config(tmp_path, methods=["affect", "affect:1", "static", "constant:0.5", "oracle"])
    replication = run_replication(config, 0)

    assert [m.method for m in replication.metrics] == ["affect", "affect:1", "static", "constant:0.5", "oracle"]
    for metrics in replication.metrics:
        assert [s.t for s in metrics.per_step] == [0, 1, 2]
        assert metrics.per_step[0].alpha is None
        assert all(s.rand == 1.0 for s in metrics.per_step)
        assert all(s.mse is not None and s.mse >= 0 for s in metrics.per_step)
    assert replication.labels == []


def test_same_run_same_result(tmp_path):
    config = _config(tmp_path)
    first = run_replication(config, 2)
    second = run_replication(config, 2)
    for a, b in zip(first.metrics, second.metrics):
        assert a.rows() == b.rows()


def test_mse_can_be_disabled(tmp_path):
    config = _config(tmp_path, mse=False)
    replication = run_replication(config, 0)
    assert all(s.mse is None for m in replication.metrics for s in m.per_step)


def test_label_rows(tmp_path):
    config = _config(tmp_path, write_labels=True)
    replication = run_replication(config, 0)

    # 2 methods x 3 steps x 10 objects
    assert len(replication.labels) == 60
    first = replication.labels[0]
    assert set(first) == {"run", "method", "t", "id", "label"}
    assert first["method"] == "affect"


def test_trained_pcq(tmp_path):
    config = _config(tmp_path, methods=["pcq:trained", "pcq:0.5"])
    replication = run_replication(config, 0)
    trained = replication.metrics[0]
    assert trained.method == "pcq:trained"
    assert 0.0 <= trained.per_step[1].alpha <= 1.0
    assert replication.metrics[1].per_step[1].alpha == 0.5


def test_results_in_run_order(tmp_path):
    config = _config(tmp_path, runs=3)
    replications = run_replications(config)
    assert [r.run for r in replications] == [0, 1, 2]


def test_worker_count_does_not_change_results(tmp_path):
    serial = run_replications(_config(tmp_path, runs=3, workers=1))
    parallel = run_replications(_config(tmp_path, runs=3, workers=2))

    assert [r.run for r in parallel] == [0, 1, 2]
    for a, b in zip(serial, parallel):
        assert [m.rows() for m in a.metrics] == [m.rows() for m in b.metrics]


def test_oracle_needs_true_moments(tmp_path):
    from affect.errors import ConfigError
    from affect.proximity.io import step_file, write_matrix
    from affect.proximity.matrix import ProximityMatrix

    for t in range(2):
        write_matrix(step_file(tmp_path / "seq", t), ProximityMatrix.build(np.eye(2), ["a", "b"]))
    config = parse_config({
        "scenario": {"type": "csv", "dir": "seq"},
        "methods": ["oracle"],
        "clusterer": {"type": "kmeans"},
        "k": 1,
        "logging": {"enable": False},
    }, base_dir=tmp_path)

    with pytest.raises(ConfigError):
        run_replication(config, 0)


def _dump_module():
    path = Path(__file__).resolve().parents[1] / "scripts" / "dump_scenario.py"
    spec = importlib.util.spec_from_file_location("dump_scenario", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_dumped_replicate_replays_to_same_metrics(tmp_path):
    config = _config(tmp_path, seed=3, methods=["affect", "static", "oracle"])
    assert _dump_module().dump(config, 0, tmp_path / "seq") == 3

    replay = parse_config({
        "scenario": {"type": "csv", "dir": "seq", "kind": "similarity"},
        "methods": ["affect", "static", "oracle"],
        "clusterer": {"type": "kmeans"},
        "k": 2,
        "seed": 3,
        "logging": {"enable": False},
    }, base_dir=tmp_path)

    generated = run_replication(config, 0)
    replayed = run_replication(replay, 0)
    for a, b in zip(generated.metrics, replayed.metrics):
        assert [s.rand for s in a.per_step] == [s.rand for s in b.per_step]
        np.testing.assert_allclose(
            [s.mse for s in a.per_step], [s.mse for s in b.per_step], rtol=1e-9
        )
