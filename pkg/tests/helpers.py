"""Small builders used across test modules."""

import numpy as np


def block_values(sizes, within, between, diag):
    """Block-constant matrix with the given within, between and diagonal values."""
    labels = np.repeat(np.arange(len(sizes)), sizes)
    values = np.where(labels[:, None] == labels[None, :], within, between).astype(float)
    np.fill_diagonal(values, diag)
    return values


def ids_for(n):
    return tuple(f"o{i}" for i in range(n))


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


def small_gmm_config(**top):
    """Mapping of a short two-component GMM run, with top-level keys overridden."""
    data = {
        "scenario": {
            "type": "gmm",
            "n": 10,
            "T": 3,
            "means": [[3.0, 0.0], [-3.0, 0.0]],
            "covariances": 0.1,
            "weights": [0.5, 0.5],
        },
        "methods": ["affect", "static"],
        "clusterer": {"type": "kmeans"},
        "k": 2,
        "logging": {"enable": False},
    }
    data.update(top)
    return data
