"""
Running mean and standard error across replications.

Each replication contributes one scalar, its mean Rand index over time
steps. The engine feeds these in run order and logs progress from the
running statistics.
"""

import math
from typing import Optional


class RunningStats:
    """
    Welford accumulator for a stream of scalar observations.
    """

    def __init__(self) -> None:
        self._count = 0
        self._mean = 0.0
        self._m2 = 0.0  # Sum of squared deviations (Welford)

    def update(self, value: float) -> None:
        """
        Add one observation.

        Parameters
        ----------
        value : float
            Observation; NaN is rejected.
        """

        value = float(value)
        if math.isnan(value):
            raise ValueError("Cannot accumulate NaN")

        self._count += 1

        delta = value - self._mean
        self._mean += delta / self._count
        delta2 = value - self._mean
        self._m2 += delta * delta2

    @property
    def count(self) -> int:
        return self._count

    def mean(self) -> float:
        if self._count == 0:
            raise RuntimeError("Mean requires at least one sample")
        return self._mean

    def variance(self) -> float:
        """
        Sample variance (ddof = 1).

        Raises
        ------
        RuntimeError
            If fewer than two samples are available.
        """

        if self._count < 2:
            raise RuntimeError("Variance requires at least two samples")

        return self._m2 / (self._count - 1)

    def standard_error(self) -> float:
        """Standard error of the mean; 0 with a single sample."""
        if self._count < 2:
            return 0.0
        return math.sqrt(self.variance() / self._count)

    def status(self) -> dict:
        variance: Optional[float] = None
        if self._count >= 2:
            variance = self.variance()

        return {
            "samples": self._count,
            "mean": self._mean if self._count else None,
            "variance": variance,
            "stderr": self.standard_error(),
        }
