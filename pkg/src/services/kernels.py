# src/services/kernels.py
# Kernels com valor, gradiente na entrada e derivada em relação aos pesos.
#
# Os pesos podem ser um WeightVector (K_w(x,z) = K(√w⊙x, √w⊙z)) ou uma
# WeightMatrix (K_M(x,z) = K(√M x, √M z)); ambos expõem transform() e
# metric(), então as mesmas rotinas servem aos dois casos.
# Índices de coordenada aqui são 0-based (posições de coluna).

import logging
from typing import Optional, Union

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist, pdist, squareform

from src.errors import DimensionMismatchError, IndexOutOfRangeError
from src.models.kernel_spec import KernelSpec, WeightMatrix, WeightVector

logger = logging.getLogger(__name__)

Weight = Union[WeightVector, WeightMatrix]

CALIBRATION_POINTS = 256


# --- Perfis escalares ---

def _inner_profile(spec: KernelSpec, t: NDArray) -> tuple[NDArray, NDArray]:
    """g(t) e g'(t) para as famílias de produto interno."""
    if spec.family == "exponential_inner":
        g = np.exp(spec.scale * t)
        return g, spec.scale * g
    if spec.family == "polynomial_inner":
        base = spec.offset + t
        return base ** spec.degree, spec.degree * base ** (spec.degree - 1)
    return t.copy(), np.ones_like(t)


def _radial_profile(spec: KernelSpec, r: NDArray) -> tuple[NDArray, NDArray]:
    """k(r) e k'(r) para as famílias radiais."""
    sigma = spec.bandwidth
    if spec.family == "laplacian_radial":
        k = np.exp(-r / sigma)
        return k, -k / sigma
    k = np.exp(-(r ** 2) / (2.0 * sigma ** 2))
    return k, -r * k / sigma ** 2


def _radial_slope_over_r(spec: KernelSpec, r: NDArray, k: NDArray) -> NDArray:
    """k'(r)/r, com o valor 0 nos pontos r = 0 (convenção de subgradiente)."""
    if spec.family == "gaussian_radial":
        return -k / spec.bandwidth ** 2
    out = np.zeros_like(r)
    mask = r > 0
    out[mask] = -k[mask] / (spec.bandwidth * r[mask])
    return out


# --- Validação ---

def _as_rows(spec: KernelSpec, X, name: str) -> NDArray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != spec.d:
        raise DimensionMismatchError(f"{name} deve ter {spec.d} colunas, recebido shape {X.shape}")
    return X


def _check_weight(spec: KernelSpec, weight: Weight):
    if weight.d != spec.d:
        raise DimensionMismatchError(f"pesos de dimensão {weight.d}, kernel de dimensão {spec.d}")


def _check_bandwidth(spec: KernelSpec):
    if spec.needs_bandwidth:
        raise ValueError("largura de banda não calibrada; use with_median_bandwidth() antes de avaliar")


# --- Largura de banda ---

def median_bandwidth(X, weight: Weight, max_points: int = CALIBRATION_POINTS) -> float:
    """Mediana das distâncias ponderadas entre os primeiros `max_points` pontos."""
    X = np.asarray(X, dtype=float)
    sample = weight.transform(X[:max_points])
    if sample.shape[0] < 2:
        return 1.0
    sigma = float(np.median(pdist(sample)))
    if not sigma > 0:
        logger.warning("Mediana das distâncias nula; usando largura 1.0")
        return 1.0
    return sigma


def with_median_bandwidth(spec: KernelSpec, X, weight: Weight) -> KernelSpec:
    """Resolve a largura 'auto' pela heurística da mediana; demais specs passam intactas."""
    if not spec.needs_bandwidth:
        return spec
    return spec.with_bandwidth(median_bandwidth(X, weight))


# --- Avaliação ---

def _pairwise(spec: KernelSpec, X: NDArray, Z: Optional[NDArray], weight: Weight):
    """Retorna (t ou r) entre as linhas de X e Z já transformadas pelos pesos."""
    TX = weight.transform(X)
    if spec.is_radial:
        if Z is None:
            return squareform(pdist(TX))
        return cdist(TX, weight.transform(Z))
    if Z is None:
        t = TX @ TX.T / spec.d
        return (t + t.T) / 2.0
    return TX @ weight.transform(Z).T / spec.d


def gram(spec: KernelSpec, X, Z=None, weight: Optional[Weight] = None) -> NDArray:
    """
    Matriz K(X, Z) com o kernel ponderado. `Z=None` (ou Z is X) devolve
    K(X, X) exatamente simétrica.
    """
    _check_bandwidth(spec)
    weight = weight if weight is not None else WeightVector.uniform(spec.d)
    _check_weight(spec, weight)
    same = Z is None or Z is X
    X = _as_rows(spec, X, "X")
    Z = None if same else _as_rows(spec, Z, "Z")
    s = _pairwise(spec, X, Z, weight)
    if spec.is_radial:
        return _radial_profile(spec, s)[0]
    return _inner_profile(spec, s)[0]


def kernel_value(spec: KernelSpec, x, z, weight: Optional[Weight] = None) -> float:
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if x.shape != (spec.d,) or z.shape != (spec.d,):
        raise DimensionMismatchError(f"vetores de tamanho {spec.d} esperados, recebido {x.shape} e {z.shape}")
    return float(gram(spec, x[None, :], z[None, :], weight)[0, 0])


# Mesma rotina; o tipo do peso decide entre K_w e K_M.
matrix_gram = gram
matrix_kernel_value = kernel_value


def contract_input_gradient(spec: KernelSpec, Z, X, weight: Weight, coef) -> NDArray:
    """
    Linha i = Σ_k coef_k ∇_z K(z_i, x_k). Com coef = β é o gradiente do
    preditor de KRR em cada z_i.
    """
    _check_bandwidth(spec)
    _check_weight(spec, weight)
    Z = _as_rows(spec, Z, "Z")
    X = _as_rows(spec, X, "X")
    coef = np.asarray(coef, dtype=float)
    s = _pairwise(spec, Z, X, weight)
    if spec.is_radial:
        k, _ = _radial_profile(spec, s)
        C = _radial_slope_over_r(spec, s, k) * coef
        # Σ_k C_ik (z_i − x_k)
        return weight.metric(C.sum(axis=1)[:, None] * Z - C @ X)
    _, gprime = _inner_profile(spec, s)
    return weight.metric((gprime * coef) @ X) / spec.d


def kernel_input_gradient(spec: KernelSpec, x, z, weight: Optional[Weight] = None) -> NDArray:
    """∇_x K_w(x, z); zero quando r = 0 nas famílias radiais."""
    weight = weight if weight is not None else WeightVector.uniform(spec.d)
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if x.shape != (spec.d,) or z.shape != (spec.d,):
        raise DimensionMismatchError(f"vetores de tamanho {spec.d} esperados, recebido {x.shape} e {z.shape}")
    return contract_input_gradient(spec, x[None, :], z[None, :], weight, np.ones(1))[0]


# --- Derivadas em relação aos pesos ---

def weight_derivative_factor(spec: KernelSpec, X, weight: Weight) -> NDArray:
    """
    Fator F (n×n) comum às derivadas em relação aos pesos.

    Produto interno: F = g'(t) e ∂K_ab/∂M_ij = F_ab (x_ai x_bj + x_aj x_bi)/(2d).
    Radial: F = k'(r)/(2r), zero em r = 0, e ∂K_ab/∂M_ij = F_ab Δ_i Δ_j com
    Δ = x_a − x_b. Com M = Diag(w) a entrada diagonal (i = j) é ∂K/∂w_j.
    """
    _check_bandwidth(spec)
    _check_weight(spec, weight)
    X = _as_rows(spec, X, "X")
    s = _pairwise(spec, X, None, weight)
    if spec.is_radial:
        k, _ = _radial_profile(spec, s)
        F = _radial_slope_over_r(spec, s, k) / 2.0
        np.fill_diagonal(F, 0.0)
        return F
    return _inner_profile(spec, s)[1]


def _check_index(spec: KernelSpec, j: int):
    if not 0 <= j < spec.d:
        raise IndexOutOfRangeError(f"coordenada {j} fora de [0, {spec.d})")


def weight_derivative_gram(spec: KernelSpec, X, weight: WeightVector, j: int) -> NDArray:
    """Matriz n×n de ∂K_w(x^(a), x^(b))/∂w_j."""
    _check_index(spec, j)
    X = _as_rows(spec, X, "X")
    F = weight_derivative_factor(spec, X, weight)
    col = X[:, j]
    if spec.is_radial:
        delta = col[:, None] - col[None, :]
        out = F * delta ** 2
    else:
        out = F * np.outer(col, col) / spec.d
    return (out + out.T) / 2.0


def matrix_weight_derivative(spec: KernelSpec, X, weight: WeightMatrix, i: int, j: int) -> NDArray:
    """Matriz n×n de ∂K_M(x^(a), x^(b))/∂M_ij (simetrizada em i, j)."""
    _check_index(spec, i)
    _check_index(spec, j)
    X = _as_rows(spec, X, "X")
    F = weight_derivative_factor(spec, X, weight)
    xi, xj = X[:, i], X[:, j]
    if spec.is_radial:
        out = F * (xi[:, None] - xi[None, :]) * (xj[:, None] - xj[None, :])
    else:
        out = F * (np.outer(xi, xj) + np.outer(xj, xi)) / (2.0 * spec.d)
    return (out + out.T) / 2.0
