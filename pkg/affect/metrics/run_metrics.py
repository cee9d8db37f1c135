"""Per-step scores of one run of one method."""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np


@dataclass(frozen=True)
class StepMetrics:
    t: int
    rand: Optional[float]
    mse: Optional[float]
    alpha: Optional[float]
    k: int


@dataclass
class RunMetrics:
    """
    Metrics of one replication.

    ``iteration_alphas`` maps each step to the forgetting factors of every
    iteration of that step.
    """

    method: str
    run: int
    seed: int
    per_step: List[StepMetrics] = field(default_factory=list)
    iteration_alphas: Dict[int, List[float]] = field(default_factory=dict)

    def add(self, step: StepMetrics, iteration_alphas=()) -> None:
        if step.rand is not None and not 0.0 <= step.rand <= 1.0:
            raise ValueError(f"Rand index {step.rand} outside [0, 1]")
        if step.mse is not None and step.mse < 0:
            raise ValueError(f"Negative MSE {step.mse}")
        self.per_step.append(step)
        if iteration_alphas:
            self.iteration_alphas[step.t] = list(iteration_alphas)

    def rand_values(self) -> np.ndarray:
        return np.array([s.rand for s in self.per_step if s.rand is not None], dtype=float)

    def mse_values(self) -> np.ndarray:
        return np.array([s.mse for s in self.per_step if s.mse is not None], dtype=float)

    @property
    def summary(self) -> Dict[str, Optional[float]]:
        """Mean and standard error of the Rand index over steps (t = 0 included)."""
        rand = self.rand_values()
        if rand.size == 0:
            return {"mean_rand": None, "stderr_rand": None}
        stderr = float(rand.std(ddof=1) / math.sqrt(rand.size)) if rand.size > 1 else 0.0
        return {"mean_rand": float(rand.mean()), "stderr_rand": stderr}

    def rows(self) -> List[dict]:
        """Rows of the metrics CSV: run,seed,t,method,alpha,k,rand,mse."""
        return [
            {
                "run": self.run,
                "seed": self.seed,
                "t": s.t,
                "method": self.method,
                "alpha": s.alpha,
                "k": s.k,
                "rand": s.rand,
                "mse": s.mse,
            }
            for s in self.per_step
        ]

    def alpha_rows(self) -> List[dict]:
        """Rows of the alpha CSV: run,t,iteration,alpha,method."""
        out = []
        for t in sorted(self.iteration_alphas):
            for iteration, alpha in enumerate(self.iteration_alphas[t], start=1):
                out.append({
                    "method": self.method,
                    "run": self.run,
                    "t": t,
                    "iteration": iteration,
                    "alpha": alpha,
                })
        return out
