"""Object identities, proximity matrices and cross-step alignment."""

from affect.proximity.matrix import (
    ClusterAssignment,
    Kind,
    ProximityMatrix,
    SYMMETRY_TOL,
    validate,
)
from affect.proximity.registry import ObjectRegistry
from affect.proximity.alignment import align_state

__all__ = [
    "ClusterAssignment",
    "Kind",
    "ObjectRegistry",
    "ProximityMatrix",
    "SYMMETRY_TOL",
    "align_state",
    "validate",
]
