"""
Scenario backend interface.

This module defines the abstract base class that all scenario
backends must implement. It enforces a source-agnostic contract
between scenario generation and tracking.

Backends are responsible for:
- generating or reading one replicate of a proximity sequence
- attaching ground-truth memberships when they are known
- attaching true proximities and noise variances when they are known

They must NOT:
- smooth or cluster
- compute metrics
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from affect.proximity.matrix import ClusterAssignment, Kind, ProximityMatrix


@dataclass(frozen=True, eq=False)
class ScenarioStep:
    """
    One observed time step.

    ``oracle_psi`` and ``oracle_var`` are the true proximity matrix and the
    noise variances, available for generated Gaussian mixtures only.
    """

    t: int
    matrix: ProximityMatrix
    truth: Optional[ClusterAssignment] = None
    oracle_psi: Optional[ProximityMatrix] = None
    oracle_var: Optional[np.ndarray] = None


class ScenarioBackend(ABC):
    """
    Abstract base class for scenario backends.
    """

    kind: Kind = Kind.SIMILARITY
    has_oracle: bool = False

    @abstractmethod
    def generate(self, rng: np.random.Generator) -> List[ScenarioStep]:
        """
        Produce one replicate of the scenario.

        Parameters
        ----------
        rng : numpy.random.Generator
            Stream owned by this replicate.

        Returns
        -------
        list of ScenarioStep
            Steps in time order, starting at t = 0.

        Notes
        -----
        - This method must be deterministic with respect to the
          state of ``rng``.
        """
        pass

    def describe(self) -> str:
        return type(self).__name__
