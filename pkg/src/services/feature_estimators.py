# src/services/feature_estimators.py
# Estimadores de importância por coordenada: gradientes empíricos, DN,
# AGOP e matriz DN; mais salvaguarda, normalização e mistura.

import logging

import numpy as np
from numpy.typing import NDArray

from src.errors import AlphaOutOfRangeError, DimensionMismatchError, NonnegViolationError
from src.models.kernel_spec import WeightMatrix, WeightVector
from src.models.krr_model import KrrModel
from src.services import kernels, krr
from src.services.numerics import as_symmetric, psd_project

logger = logging.getLogger(__name__)


def _eval_points(model: KrrModel, X_eval) -> NDArray:
    X_eval = np.asarray(X_eval, dtype=float)
    if X_eval.ndim != 2 or X_eval.shape[0] == 0:
        raise DimensionMismatchError("X_eval deve ser uma matriz não vazia")
    return X_eval


# --- Estimadores ---
#
# Com C saídas (multiclasse) os estimadores somam sobre as saídas.

def _output_gradients(model: KrrModel, X_eval) -> NDArray:
    """Gradientes m×C×d (C = 1 para uma saída)."""
    G = krr.predict_gradient(model, _eval_points(model, X_eval))
    return G[:, None, :] if G.ndim == 2 else G


def empirical_sq_gradient_weights(model: KrrModel, X_eval) -> NDArray:
    """(1/n) Σ_i [∇f̂(x^(i))]^⊙2, sem salvaguarda."""
    G = _output_gradients(model, X_eval)
    return np.mean(np.sum(G ** 2, axis=1), axis=0)


def agop(model: KrrModel, X_eval) -> NDArray:
    """(1/n) Σ_i ∇f̂(x^(i)) ∇f̂(x^(i))ᵀ."""
    G = _output_gradients(model, X_eval)
    return as_symmetric(np.einsum("mci,mcj->ij", G, G) / G.shape[0])


def _dn_core(model: KrrModel) -> tuple[NDArray, NDArray]:
    """Fator F ponderado por Σ_c β_c β_cᵀ (simétrico) e X de treino."""
    F = kernels.weight_derivative_factor(model.spec, model.X_train, model.weight)
    coef = model.beta.reshape(model.n, -1)
    B = F * (coef @ coef.T)
    return (B + B.T) / 2.0, model.X_train


def dn_vector(model: KrrModel) -> NDArray:
    """D_j(w) = Σ_c β_cᵀ ∂K_w(X,X)/∂w_j β_c para todo j."""
    if model.has_matrix_weight:
        raise TypeError("dn_vector exige um modelo ajustado com WeightVector")
    B, X = _dn_core(model)
    if model.spec.is_radial:
        # Σ_ab B_ab (x_aj − x_bj)² = 2(Σ_a (B1)_a x_aj² − x_jᵀ B x_j)
        return 2.0 * (B.sum(axis=1) @ X ** 2 - np.einsum("aj,ab,bj->j", X, B, X))
    return np.einsum("aj,ab,bj->j", X, B, X) / model.spec.d


def dn_matrix(model: KrrModel) -> NDArray:
    """D(M)_ij = Σ_c β_cᵀ ∂K_M(X,X)/∂M_ij β_c, matriz simétrica d×d."""
    B, X = _dn_core(model)
    if model.spec.is_radial:
        D = 2.0 * ((X.T * B.sum(axis=1)) @ X - X.T @ B @ X)
    else:
        D = X.T @ B @ X / model.spec.d
    return as_symmetric(D)


# --- Salvaguarda, normalização e mistura ---

def safeguard_normalize(v, eps_s: float) -> WeightVector:
    """d·(v + ε_s·1)/‖v + ε_s·1‖₁."""
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise NonnegViolationError("o estimador deve ser não negativo antes da salvaguarda")
    if not eps_s > 0:
        raise ValueError("eps_s deve ser positivo")
    guarded = v + eps_s
    return WeightVector(v.shape[0] * guarded / guarded.sum())


def mix(w1: WeightVector, w2: WeightVector, alpha: float) -> WeightVector:
    """(1−α)·w1 + α·w2."""
    _check_alpha(alpha)
    if w1.d != w2.d:
        raise DimensionMismatchError(f"pesos de dimensões {w1.d} e {w2.d}")
    return WeightVector((1.0 - alpha) * w1.w + alpha * w2.w)


def safeguard_normalize_matrix(M, eps_s: float) -> WeightMatrix:
    """d·(M + ε_s I)/tr(M + ε_s I)."""
    M = as_symmetric(M)
    if not eps_s > 0:
        raise ValueError("eps_s deve ser positivo")
    d = M.shape[0]
    guarded = M + eps_s * np.eye(d)
    return WeightMatrix(d * guarded / np.trace(guarded))


def mix_matrix(M1: WeightMatrix, M2: WeightMatrix, alpha: float) -> WeightMatrix:
    _check_alpha(alpha)
    if M1.d != M2.d:
        raise DimensionMismatchError(f"matrizes de dimensões {M1.d} e {M2.d}")
    return WeightMatrix((1.0 - alpha) * M1.M + alpha * M2.M)


def _check_alpha(alpha: float):
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRangeError(f"alpha={alpha} fora de [0, 1]")


# --- Montagem dos dois estimadores de um passo ---

def irkm_update_terms(model: KrrModel, X_eval) -> tuple[NDArray, NDArray]:
    """
    Termos brutos de um passo IRKM: o gradiente empírico ao quadrado e
    (1/n)·D(w) ⊙ w. Entradas negativas do segundo (kernels radiais) são
    truncadas em zero.
    """
    raw1 = empirical_sq_gradient_weights(model, X_eval)
    raw2 = dn_vector(model) * model.weight.w / model.n
    negative = raw2 < 0
    if np.any(negative):
        logger.debug("DN: %d coordenadas negativas truncadas (min %.3e)", int(negative.sum()), raw2.min())
        raw2 = np.where(negative, 0.0, raw2)
    return raw1, raw2


def rfm_update_terms(model: KrrModel, X_eval) -> tuple[NDArray, NDArray]:
    """AGOP e (1/n)·√M D(M) √M projetado no cone PSD."""
    raw1 = agop(model, X_eval)
    S = model.weight.sqrt_M
    raw2 = psd_project(S @ dn_matrix(model) @ S / model.n)
    return raw1, raw2
