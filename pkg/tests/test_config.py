from pathlib import Path

import numpy as np
import pytest

from affect.clustering import HierarchicalClusterer, KMeansClusterer, SpectralClusterer
from affect.config import load_config, load_preset, load_yaml, parse_config, presets_dir
from affect.errors import BadConfig, ConfigError
from affect.proximity.matrix import Kind
from tests.helpers import small_gmm_config


def test_presets_exist():
    names = sorted(p.stem for p in presets_dir().glob("*.yaml"))
    assert names == ["boids-fixed", "boids-variable", "colliding", "well-separated"]


def test_colliding_preset():
    config = load_preset("colliding")
    gmm = config.scenario.gmm
    assert (gmm.n, gmm.T, gmm.k) == (40, 40, 2)
    np.testing.assert_allclose(gmm.means, [[3.0, 3.0], [-3.0, -3.0]])
    assert [e.t for e in gmm.events] == [10, 11]
    assert gmm.events[1].weights == (0.75, 0.25)
    assert [m.label for m in config.methods] == ["affect", "affect:1", "constant:0.5", "static", "oracle"]
    assert isinstance(config.clusterer.build(), KMeansClusterer)
    assert config.runs == 100


def test_well_separated_preset():
    config = load_preset("well-separated")
    gmm = config.scenario.gmm
    np.testing.assert_allclose(gmm.covariances[0], 0.1 * np.eye(2))
    np.testing.assert_allclose(gmm.events[0].covariances[1], 0.3 * np.eye(2))
    assert gmm.events[0].t == 19
    assert gmm.walks[0].step == 0.1


def test_boids_presets():
    fixed = load_preset("boids-fixed")
    assert fixed.scenario.kind is Kind.DISSIMILARITY
    assert isinstance(fixed.clusterer.build(), HierarchicalClusterer)

    variable = load_preset("boids-variable")
    assert variable.scenario.kind is Kind.SIMILARITY
    assert variable.scenario.boids.regroup_flocks == 2
    clusterer = variable.clusterer.build(seed=5)
    assert isinstance(clusterer, SpectralClusterer)
    assert clusterer.k_range == (1, 6)
    assert clusterer.seed == 5


def test_unknown_preset():
    with pytest.raises(ConfigError, match="available"):
        load_preset("nope")


def test_defaults():
    config = parse_config(small_gmm_config())
    assert config.runs == 1
    assert config.workers == 1
    assert config.affect.iterations == 3
    assert config.affect.init_policy == "previous"
    assert config.mse is True
    assert config.write_labels is False


def test_single_method_string():
    config = parse_config(small_gmm_config(methods="affect:2"))
    assert config.methods[0].iterations == 2


@pytest.mark.parametrize("top", [
    {"colour": "blue"},
    {"runs": 0},
    {"workers": 0},
    {"methods": []},
    {"methods": ["affect", "affect"]},
    {"methods": ["median"]},
    {"k": {"modularity": [1, 4]}},
    {"k": None},
    {"clusterer": {"type": "hierarchical"}},
    {"clusterer": {"type": "dbscan"}},
    {"clusterer": {"type": "spectral", "variant": "min_cut"}},
    {"clusterer": {"type": "kmeans", "linkage": "ward"}},
    {"clusterer": {"type": "kmeans", "n_init": 0}},
    {"affect": {"iterations": 0}},
    {"affect": {"tolerance": 0.1}},
    {"logging": {"interval": 0}},
])
def test_invalid_top_level(top):
    with pytest.raises(ConfigError):
        parse_config(small_gmm_config(**top))


def test_scenario_errors():
    data = small_gmm_config()
    data["scenario"]["weights"] = [0.9, 0.9]
    with pytest.raises(BadConfig):
        parse_config(data)

    data = small_gmm_config()
    del data["scenario"]["means"]
    with pytest.raises(ConfigError):
        parse_config(data)

    data = small_gmm_config()
    data["scenario"]["type"] = "lorenz"
    with pytest.raises(ConfigError):
        parse_config(data)


def test_oracle_needs_gaussian_mixture():
    data = {
        "scenario": {"type": "boids", "T": 3, "flock_sizes": [3, 3]},
        "methods": ["oracle"],
        "clusterer": {"type": "hierarchical"},
        "k": 2,
    }
    with pytest.raises(ConfigError):
        parse_config(data)


def test_csv_paths_resolve_against_base_dir(tmp_path):
    data = {
        "scenario": {"type": "csv", "dir": "seq", "kind": "dissimilarity"},
        "methods": ["static"],
        "clusterer": {"type": "hierarchical", "linkage": "average"},
        "k": 3,
        "output_dir": "out",
    }
    config = parse_config(data, base_dir=tmp_path)
    assert config.scenario.csv_dir == tmp_path / "seq"
    assert config.output_dir == tmp_path / "out"
    assert config.scenario.kind is Kind.DISSIMILARITY


def test_overrides():
    config = parse_config(small_gmm_config())
    changed = config.with_overrides(runs=5, seed=9, output_dir="elsewhere", workers=2)
    assert (changed.runs, changed.seed, changed.workers) == (5, 9, 2)
    assert changed.output_dir == Path("elsewhere")
    assert config.with_overrides() is config


def test_load_yaml_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_yaml(tmp_path / "missing.yaml")

    bad = tmp_path / "bad.yaml"
    bad.write_text("scenario: [unclosed\n")
    with pytest.raises(ConfigError):
        load_yaml(bad)

    scalar = tmp_path / "scalar.yaml"
    scalar.write_text("42\n")
    with pytest.raises(ConfigError):
        load_yaml(scalar)


def test_load_config_from_file(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(
        "scenario:\n"
        "  type: gmm\n"
        "  n: 6\n"
        "  T: 2\n"
        "  means: [[1.0, 0.0], [-1.0, 0.0]]\n"
        "  covariances: 0.1\n"
        "  weights: [0.5, 0.5]\n"
        "methods:\n"
        "  - \"pcq:0.5\"\n"
        "clusterer:\n"
        "  type: kmeans\n"
        "k: 2\n"
    )
    config = load_config(path)
    assert config.methods[0].alpha == 0.5
