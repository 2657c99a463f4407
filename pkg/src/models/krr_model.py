# src/models/krr_model.py
# Estado de um ajuste de regressão ridge com kernel.

from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import NDArray

from src.models.kernel_spec import KernelSpec, WeightMatrix, WeightVector


@dataclass(frozen=True, eq=False)
class KrrModel:
    spec: KernelSpec
    weight: Union[WeightVector, WeightMatrix]
    X_train: NDArray
    beta: NDArray
    lam: float
    jitter_used: float

    def __post_init__(self):
        for name in ("X_train", "beta"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def n(self):
        return self.X_train.shape[0]

    @property
    def d(self):
        return self.X_train.shape[1]

    @property
    def n_outputs(self):
        return 1 if self.beta.ndim == 1 else self.beta.shape[1]

    @property
    def has_matrix_weight(self):
        return isinstance(self.weight, WeightMatrix)

    def to_dict(self):
        return {
            "kernel": self.spec.to_dict(),
            "n": self.n,
            "d": self.d,
            "lambda": self.lam,
            "jitter_used": self.jitter_used,
            "weight_kind": "matrix" if self.has_matrix_weight else "vector",
            "outputs": self.n_outputs,
        }
