# src/services/numerics.py
# Álgebra linear densa e simétrica usada por todos os módulos de aprendizado.

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import LinAlgError, cho_factor, cho_solve, eigh, subspace_angles

from src.errors import DimensionMismatchError, NonFiniteValueError, NotPositiveDefiniteError, ZeroReferenceError

logger = logging.getLogger(__name__)

JITTER_ESCALATIONS = 6
JITTER_FACTOR = 10.0
RELATIVE_JITTER_FLOOR = 1e-12


@dataclass(frozen=True)
class Subspace:
    """Base ortonormal (d×k) de um subespaço, com os autovalores associados."""

    basis: NDArray
    eigenvalues: NDArray

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def rank(self):
        return self.basis.shape[1]


def as_symmetric(A) -> NDArray:
    """Simetriza (A + Aᵀ)/2; o resultado é exatamente simétrico."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"matriz quadrada esperada, recebido shape {A.shape}")
    return (A + A.T) / 2.0


def _check_square(A: NDArray) -> int:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"matriz quadrada esperada, recebido shape {A.shape}")
    return A.shape[0]


def solve_spd(A, B, jitter: float = 0.0) -> tuple[NDArray, float]:
    """
    Resolve (A + jitter·I) X = B por Cholesky.

    Se a fatoração falhar, o jitter sobe ×10 até JITTER_ESCALATIONS vezes a
    partir de max(jitter, 1e-12·tr(A)/dim). Retorna (X, jitter usado).
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    dim = _check_square(A)
    if B.shape[0] != dim:
        raise DimensionMismatchError(f"B tem {B.shape[0]} linhas, A tem dimensão {dim}")
    if jitter < 0:
        raise ValueError("jitter deve ser não negativo")
    if not (np.isfinite(A).all() and np.isfinite(B).all()):
        raise NonFiniteValueError(f"sistema {dim}×{dim} com entradas inf ou NaN")

    eye = np.eye(dim)
    try:
        factor = cho_factor(A + jitter * eye, lower=True)
        return cho_solve(factor, B), float(jitter)
    except LinAlgError:
        pass

    level = max(jitter, RELATIVE_JITTER_FLOOR * abs(np.trace(A)) / dim)
    if level == 0.0:
        # A nula: o piso relativo também é nulo
        level = RELATIVE_JITTER_FLOOR
    for _ in range(JITTER_ESCALATIONS):
        try:
            factor = cho_factor(A + level * eye, lower=True)
            logger.debug("Cholesky exigiu jitter %.3e (dim=%d)", level, dim)
            return cho_solve(factor, B), float(level)
        except LinAlgError:
            level *= JITTER_FACTOR
    raise NotPositiveDefiniteError(
        f"matriz {dim}×{dim} não é definida positiva mesmo com jitter {level / JITTER_FACTOR:.3e}"
    )


def psd_sqrt(M) -> NDArray:
    """Raiz quadrada PSD: autovalores negativos são truncados em zero."""
    M = np.asarray(M, dtype=float)
    _check_square(M)
    eigvals, eigvecs = eigh(as_symmetric(M))
    root = np.sqrt(np.clip(eigvals, 0.0, None))
    return as_symmetric((eigvecs * root) @ eigvecs.T)


def psd_project(M) -> NDArray:
    """Projeção no cone PSD (autovalores negativos zerados)."""
    M = np.asarray(M, dtype=float)
    _check_square(M)
    eigvals, eigvecs = eigh(as_symmetric(M))
    return as_symmetric((eigvecs * np.clip(eigvals, 0.0, None)) @ eigvecs.T)


def top_k_eigenspace(M, k: int) -> Subspace:
    M = np.asarray(M, dtype=float)
    dim = _check_square(M)
    if not 1 <= k <= dim:
        raise DimensionMismatchError(f"k={k} fora de [1, {dim}]")
    eigvals, eigvecs = eigh(as_symmetric(M), subset_by_index=[dim - k, dim - 1])
    order = np.argsort(eigvals, kind="stable")[::-1]
    return Subspace(basis=eigvecs[:, order], eigenvalues=eigvals[order])


def principal_angle(U: Subspace, V: Subspace) -> float:
    """Maior ângulo principal entre os subespaços, em radianos."""
    if U.basis.shape != V.basis.shape:
        raise DimensionMismatchError(
            f"subespaços incompatíveis: {U.basis.shape} vs {V.basis.shape}"
        )
    return float(subspace_angles(U.basis, V.basis).max())


def relative_matrix_error(A, B) -> float:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"shapes diferentes: {A.shape} vs {B.shape}")
    ref = np.linalg.norm(B, ord="fro")
    if ref == 0.0:
        raise ZeroReferenceError("matriz de referência com norma de Frobenius nula")
    return float(np.linalg.norm(A - B, ord="fro") / ref)
