"""
Proximity matrix and cluster assignment value types.

A ProximityMatrix is a square symmetric matrix of similarities or
dissimilarities at one time step, tagged with the object ids that index its
rows and columns. A ClusterAssignment is a flat partition of the same ids.

Both types are immutable once constructed: the underlying arrays are
copied and marked read-only.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from affect.errors import (
    AsymmetricMatrix,
    DimensionMismatch,
    IdMismatch,
    NegativeDissimilarity,
)


# Absolute tolerance on |w_ij - w_ji|.
SYMMETRY_TOL = 1e-9


class Kind(str, Enum):
    """Whether larger entries mean closer or farther objects."""

    SIMILARITY = "similarity"
    DISSIMILARITY = "dissimilarity"

    @classmethod
    def parse(cls, value) -> "Kind":
        if isinstance(value, Kind):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(
                f"Unknown proximity kind: {value!r} "
                "(expected 'similarity' or 'dissimilarity')"
            ) from None


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


# ------------------------------------------------------------
# Proximity matrix
# ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProximityMatrix:
    """
    Square proximity matrix at one time step.

    Construction does not validate; use ``ProximityMatrix.build`` for
    validated, symmetrized matrices or call ``validate`` explicitly.
    """

    kind: Kind
    values: np.ndarray
    ids: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        object.__setattr__(self, "values", _frozen(self.values))
        object.__setattr__(self, "ids", tuple(str(i) for i in self.ids))

    @classmethod
    def build(
        cls,
        values,
        ids: Sequence[str],
        kind=Kind.SIMILARITY
    ) -> "ProximityMatrix":
        """
        Validate and symmetrize a raw matrix.

        Entries within the symmetry tolerance are replaced by
        (w_ij + w_ji) / 2.

        Raises
        ------
        AsymmetricMatrix, NegativeDissimilarity, DimensionMismatch
        """
        raw = cls(kind=kind, values=np.asarray(values, dtype=float), ids=tuple(ids))
        validate(raw)
        return raw.with_values(0.5 * (raw.values + raw.values.T))

    @property
    def n(self) -> int:
        return len(self.ids)

    def index(self) -> Dict[str, int]:
        """Map object id to row index."""
        return {obj: i for i, obj in enumerate(self.ids)}

    def with_values(self, values: np.ndarray) -> "ProximityMatrix":
        """Same ids and kind, new entries."""
        return ProximityMatrix(kind=self.kind, values=values, ids=self.ids)

    def submatrix(self, ids: Sequence[str]) -> "ProximityMatrix":
        """Rows and columns for ``ids``, in the given order."""
        index = self.index()
        try:
            rows = [index[obj] for obj in ids]
        except KeyError as exc:
            raise IdMismatch(f"Object id {exc.args[0]!r} not in matrix") from None

        return ProximityMatrix(
            kind=self.kind,
            values=self.values[np.ix_(rows, rows)],
            ids=tuple(ids)
        )

    def require_same_ids(self, other: "ProximityMatrix") -> None:
        if self.ids != other.ids:
            raise IdMismatch(
                f"Matrices index different objects "
                f"({self.n} vs {other.n} ids, or different order)"
            )


def validate(matrix: ProximityMatrix) -> None:
    """
    Check every ProximityMatrix invariant.

    Returns None when the matrix is valid; symmetrizes nothing.

    Raises
    ------
    DimensionMismatch
        If the matrix is not n x n with n >= 1 and n ids.
    AsymmetricMatrix
        If max |w_ij - w_ji| exceeds SYMMETRY_TOL.
    NegativeDissimilarity
        If a dissimilarity matrix has negative entries or a nonzero diagonal.
    """

    values = matrix.values

    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise DimensionMismatch(
            f"Proximity matrix must be square, got shape {values.shape}"
        )

    n = values.shape[0]
    if n < 1:
        raise DimensionMismatch("Proximity matrix must have at least one object")

    if len(matrix.ids) != n:
        raise DimensionMismatch(
            f"Matrix has {n} rows but {len(matrix.ids)} ids"
        )

    if len(set(matrix.ids)) != n:
        raise DimensionMismatch("Object ids must be unique")

    if not np.all(np.isfinite(values)):
        raise DimensionMismatch("Proximity matrix contains non-finite entries")

    asymmetry = float(np.max(np.abs(values - values.T)))
    if asymmetry > SYMMETRY_TOL:
        raise AsymmetricMatrix(
            f"Matrix asymmetry {asymmetry:.3g} exceeds tolerance {SYMMETRY_TOL:g}"
        )

    if matrix.kind is Kind.DISSIMILARITY:
        if np.any(values < 0):
            raise NegativeDissimilarity(
                f"Dissimilarity matrix has negative entry {values.min():.6g}"
            )
        if np.any(np.diag(values) != 0):
            raise NegativeDissimilarity(
                "Dissimilarity matrix must have a zero diagonal"
            )


# ------------------------------------------------------------
# Cluster assignment
# ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """
    Flat partition of ``ids`` into ``k`` non-empty clusters labelled 0..k-1.
    """

    labels: np.ndarray
    k: int
    ids: Tuple[str, ...]

    def __post_init__(self) -> None:
        labels = np.array(self.labels, dtype=int, copy=True)
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "ids", tuple(str(i) for i in self.ids))

        if labels.ndim != 1 or labels.size != len(self.ids):
            raise DimensionMismatch(
                f"{labels.size} labels for {len(self.ids)} ids"
            )
        if self.k < 1:
            raise ValueError("Cluster count must be positive")
        if labels.size and (labels.min() < 0 or labels.max() >= self.k):
            raise ValueError(f"Labels must lie in 0..{self.k - 1}")
        if labels.size and np.unique(labels).size != self.k:
            raise ValueError("Every cluster in a finalized assignment needs a member")

    @classmethod
    def from_labels(cls, labels: Iterable[int], ids: Sequence[str]) -> "ClusterAssignment":
        """
        Build an assignment from arbitrary integer labels.

        Labels are compacted to 0..k-1 preserving their relative order, so
        labels that are already compact are kept as given.
        """
        labels = np.asarray(labels if isinstance(labels, np.ndarray) else list(labels))
        uniques, compact = np.unique(labels, return_inverse=True)
        return cls(labels=compact.reshape(-1), k=int(uniques.size), ids=tuple(ids))

    @classmethod
    def single(cls, ids: Sequence[str]) -> "ClusterAssignment":
        """Every object in one cluster."""
        return cls(labels=np.zeros(len(ids), dtype=int), k=1, ids=tuple(ids))

    @property
    def n(self) -> int:
        return len(self.ids)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def one_hot(self) -> np.ndarray:
        """n x k membership indicator matrix."""
        out = np.zeros((self.n, self.k))
        out[np.arange(self.n), self.labels] = 1.0
        return out

    def clusters(self) -> List[List[str]]:
        """Member ids per cluster label."""
        groups: List[List[str]] = [[] for _ in range(self.k)]
        for obj, label in zip(self.ids, self.labels):
            groups[label].append(obj)
        return groups

    def restrict(self, ids: Sequence[str]) -> "ClusterAssignment":
        """Assignment of a subset of objects, labels compacted."""
        index = {obj: i for i, obj in enumerate(self.ids)}
        try:
            rows = [index[obj] for obj in ids]
        except KeyError as exc:
            raise IdMismatch(f"Object id {exc.args[0]!r} not in assignment") from None
        return ClusterAssignment.from_labels(self.labels[rows], ids)

    def aligned_to(self, ids: Sequence[str]) -> "ClusterAssignment":
        """Same partition reordered to ``ids``; the id sets must be equal."""
        if tuple(ids) == self.ids:
            return self
        if set(ids) != set(self.ids) or len(ids) != self.n:
            raise IdMismatch("Assignments cover different objects")
        index = {obj: i for i, obj in enumerate(self.ids)}
        rows = [index[obj] for obj in ids]
        return ClusterAssignment(labels=self.labels[rows], k=self.k, ids=tuple(ids))

    def same_partition(self, other: "ClusterAssignment") -> bool:
        """True when both assignments group the objects identically."""
        other = other.aligned_to(self.ids)
        if self.k != other.k:
            return False
        pairs = set(zip(self.labels.tolist(), other.labels.tolist()))
        return len(pairs) == self.k
