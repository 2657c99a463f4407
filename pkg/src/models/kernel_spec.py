# src/models/kernel_spec.py
# Famílias de kernel e pesos por coordenada (vetor w ou matriz M).

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from src.errors import ConfigError, DimensionMismatchError, NonnegViolationError
from src.services.numerics import as_symmetric, psd_sqrt

RADIAL_FAMILIES = ("laplacian_radial", "gaussian_radial")
INNER_FAMILIES = ("exponential_inner", "polynomial_inner", "linear_inner")
FAMILIES = RADIAL_FAMILIES + INNER_FAMILIES


@dataclass(frozen=True)
class KernelSpec:
    """
    Kernel de produto interno g(⟨x,z⟩/d) ou radial k(‖x−z‖).

    `bandwidth=None` significa "auto": a largura é calibrada pela mediana das
    distâncias (ver kernels.with_median_bandwidth).
    """

    family: str
    d: int
    bandwidth: Optional[float] = None
    scale: float = 1.0
    degree: int = 2
    offset: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError("kernel.family", f"família desconhecida '{self.family}'; use uma de {FAMILIES}")
        if self.d < 1:
            raise ConfigError("d", "a dimensão deve ser ≥ 1")
        if self.bandwidth is not None and not self.bandwidth > 0:
            raise ConfigError("kernel.sigma", "a largura de banda deve ser positiva")
        if self.scale <= 0:
            raise ConfigError("kernel.scale", "a escala deve ser positiva")
        if self.degree < 1:
            raise ConfigError("kernel.degree", "o grau deve ser ≥ 1")
        if self.offset < 0:
            raise ConfigError("kernel.offset", "o offset deve ser ≥ 0")

    @property
    def is_radial(self):
        return self.family in RADIAL_FAMILIES

    @property
    def needs_bandwidth(self):
        return self.is_radial and self.bandwidth is None

    def with_bandwidth(self, sigma: float) -> "KernelSpec":
        return replace(self, bandwidth=float(sigma))

    def to_dict(self):
        return {
            "family": self.family,
            "d": self.d,
            "sigma": self.bandwidth if self.bandwidth is not None else "auto",
            "scale": self.scale,
            "degree": self.degree,
            "offset": self.offset,
        }


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Pesos não negativos por coordenada; guarda √w."""

    w: NDArray
    sqrt_w: NDArray = field(init=False, repr=False)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1:
            raise DimensionMismatchError(f"vetor de pesos deve ser 1-D, recebido shape {w.shape}")
        if np.any(w < 0):
            raise NonnegViolationError("pesos negativos não são permitidos")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "sqrt_w", np.sqrt(w))

    @classmethod
    def uniform(cls, d: int) -> "WeightVector":
        return cls(np.ones(d))

    @property
    def d(self):
        return self.w.shape[0]

    def transform(self, X: NDArray) -> NDArray:
        """Linhas de X reescaladas: √w ⊙ x."""
        return X * self.sqrt_w

    def metric(self, V: NDArray) -> NDArray:
        """Aplica a métrica a linhas de V: w ⊙ v."""
        return V * self.w

    def as_matrix(self) -> "WeightMatrix":
        return WeightMatrix(np.diag(self.w))

    def to_dict(self):
        return {"w": self.w.tolist()}


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """Matriz de pesos PSD M; guarda S = √M."""

    M: NDArray
    sqrt_M: NDArray = field(init=False, repr=False)

    def __post_init__(self):
        M = as_symmetric(self.M)
        M.setflags(write=False)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "sqrt_M", psd_sqrt(M))

    @classmethod
    def identity(cls, d: int) -> "WeightMatrix":
        return cls(np.eye(d))

    @property
    def d(self):
        return self.M.shape[0]

    def transform(self, X: NDArray) -> NDArray:
        """Linhas de X levadas a √M·x (S é simétrica)."""
        return X @ self.sqrt_M

    def metric(self, V: NDArray) -> NDArray:
        """Aplica a métrica a linhas de V: M·v."""
        return V @ self.M

    def eigenvalues(self) -> NDArray:
        return np.sort(np.linalg.eigvalsh(self.M))[::-1]

    def to_dict(self):
        return {"M": self.M.tolist()}
