# src/models/dataset.py
# Conjuntos de dados, alvos sintéticos e esquema de CSV.

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from src.errors import DimensionMismatchError
from src.models.polynomial import FourierPolynomial

NORMALIZATIONS = ("none", "zscore", "minus_one_one")
ORTHOGONALITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Dataset:
    X: NDArray
    y: NDArray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=float)
        # y com duas dimensões: uma coluna por saída (one-hot em multiclasse)
        if X.ndim != 2 or y.ndim not in (1, 2) or X.shape[0] != y.shape[0]:
            raise DimensionMismatchError(f"X {X.shape} e y {y.shape} incompatíveis")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def d(self):
        return self.X.shape[1]

    def to_dict(self):
        return {"n": self.n, "d": self.d, "meta": dict(self.meta)}


@dataclass(frozen=True, eq=False)
class TargetSpec:
    """y = f(Ux) + σ_ε ξ; `rotation=None` significa U = I."""

    f: FourierPolynomial
    rotation: Optional[NDArray] = None
    noise_sigma: float = 0.0

    def __post_init__(self):
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma deve ser ≥ 0")
        if self.rotation is not None:
            U = np.asarray(self.rotation, dtype=float)
            if U.shape != (self.f.d, self.f.d):
                raise DimensionMismatchError(f"rotação {U.shape} para alvo de dimensão {self.f.d}")
            if np.linalg.norm(U.T @ U - np.eye(self.f.d)) > ORTHOGONALITY_TOL * max(1, self.f.d):
                raise ValueError("a rotação não é ortogonal")
            object.__setattr__(self, "rotation", U)

    @property
    def d(self):
        return self.f.d

    def to_dict(self):
        return {
            "target": self.f.to_text(),
            "rotated": self.rotation is not None,
            "noise_sigma": self.noise_sigma,
        }


@dataclass(frozen=True)
class CsvSchema:
    label_column: str
    feature_columns: Optional[Sequence[str]] = None
    normalization: str = "zscore"

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalização '{self.normalization}' inválida; use uma de {NORMALIZATIONS}")
