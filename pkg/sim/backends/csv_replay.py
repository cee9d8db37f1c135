"""
Replay of a proximity sequence stored as CSV files.

Reads ``step_NNNN.csv`` matrices and, when present for every step,
``labels_NNNN.csv`` ground truth, ``oracle_NNNN.csv`` true proximities
and ``variance_NNNN.csv`` noise variances.
"""

import logging
from pathlib import Path
from typing import List

import numpy as np

from affect.proximity.io import ingest, read_companions, read_labels, read_matrix
from affect.proximity.matrix import Kind
from sim.backends.base import ScenarioBackend, ScenarioStep

logger = logging.getLogger(__name__)


class CsvReplayBackend(ScenarioBackend):
    """
    Every replicate is the same stored sequence; ``rng`` is ignored.
    """

    def __init__(self, directory: Path, kind=Kind.SIMILARITY) -> None:
        self.directory = Path(directory)
        self.kind = Kind.parse(kind)
        self._cache: List[ScenarioStep] = []

    @property
    def has_oracle(self) -> bool:
        return self._load()[-1].oracle_var is not None

    def _load(self) -> List[ScenarioStep]:
        if self._cache:
            return self._cache

        matrices = ingest(self.directory, kind=self.kind)
        steps = len(matrices)

        labels = read_companions(self.directory, "labels", steps)
        oracle = read_companions(self.directory, "oracle", steps)
        variance = read_companions(self.directory, "variance", steps)

        if labels is None:
            logger.warning(f"No ground truth in {self.directory}; Rand index will not be reported")

        replay = []
        for t, matrix in enumerate(matrices):
            truth = read_labels(labels[t]).aligned_to(matrix.ids) if labels else None
            psi = read_matrix(oracle[t], kind=Kind.SIMILARITY) if oracle else None
            var = None
            if variance:
                var = np.asarray(read_matrix(variance[t], kind=Kind.SIMILARITY).submatrix(matrix.ids).values)
            replay.append(ScenarioStep(
                t=t,
                matrix=matrix,
                truth=truth,
                oracle_psi=None if psi is None else psi.submatrix(matrix.ids),
                oracle_var=var,
            ))

        self._cache = replay
        return replay

    def generate(self, rng: np.random.Generator) -> List[ScenarioStep]:
        return list(self._load())

    def describe(self) -> str:
        return f"csv({self.directory})"
