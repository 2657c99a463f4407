# src/models/trace.py
# Registro passo a passo de uma execução IRKM / RFM.

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


def as_float_list(values) -> Optional[list]:
    if values is None:
        return None
    return [float(v) for v in np.ravel(values)]


@dataclass
class StepRecord:
    step: int
    test_mse: float
    sigma: Optional[float]
    jitter: float
    wall_ms: float
    weights: Optional[list] = None
    eigvals: Optional[list] = None
    w1_raw: Optional[list] = None
    w2_raw: Optional[list] = None
    agop_error: Optional[float] = None
    principal_angle: Optional[float] = None
    top_coordinates: Optional[list] = None

    def to_dict(self, include_timing: bool = False):
        data = {
            "step": self.step,
            "test_mse": float(self.test_mse),
            "sigma": None if self.sigma is None else float(self.sigma),
            "jitter": float(self.jitter),
        }
        for name in ("weights", "eigvals", "w1_raw", "w2_raw", "top_coordinates"):
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        for name in ("agop_error", "principal_angle"):
            value = getattr(self, name)
            if value is not None:
                data[name] = float(value)
        if include_timing:
            data["wall_ms"] = float(self.wall_ms)
        return data


@dataclass
class TrainTrace:
    method: str
    steps: list[StepRecord] = field(default_factory=list)
    best_index: int = -1

    def __len__(self):
        return len(self.steps)

    def append(self, record: StepRecord):
        self.steps.append(record)

    @property
    def best(self) -> StepRecord:
        return self.steps[self.best_index]

    def best_step(self) -> int:
        return self.best.step

    def test_mses(self) -> list[float]:
        return [r.test_mse for r in self.steps]

    def to_dict(self):
        return {
            "method": self.method,
            "best_step": self.best_step() if self.steps else None,
            "steps": [r.to_dict() for r in self.steps],
        }
