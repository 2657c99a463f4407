# src/services/krr.py
# Regressão ridge com kernel ponderado: ajuste, predição, gradientes e perda.

import logging
from typing import Optional

import numpy as np
from numpy.typing import NDArray
from sklearn.metrics import accuracy_score, roc_auc_score

from src.errors import DimensionMismatchError, EmptyDataSourceError
from src.models.kernel_spec import KernelSpec, WeightVector
from src.models.krr_model import KrrModel
from src.services import kernels
from src.services.kernels import Weight
from src.services.numerics import solve_spd

logger = logging.getLogger(__name__)


def fit(spec: KernelSpec, weight: Optional[Weight], X, y, lam: float) -> KrrModel:
    """
    β = (K_w(X,X) + λI)⁻¹ y. Largura 'auto' é calibrada aqui se ainda não foi.
    Com y n×C (uma coluna por saída) o mesmo kernel resolve todas as colunas.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyDataSourceError("fit exige ao menos um ponto de treino")
    if y.ndim not in (1, 2) or y.shape[0] != X.shape[0]:
        raise DimensionMismatchError(f"y tem shape {y.shape}, esperado ({X.shape[0]},) ou ({X.shape[0]}, C)")
    if lam < 0:
        raise ValueError("lambda deve ser ≥ 0")
    weight = weight if weight is not None else WeightVector.uniform(spec.d)
    spec = kernels.with_median_bandwidth(spec, X, weight)
    K = kernels.gram(spec, X, None, weight)
    beta, jitter = solve_spd(K, y, lam)
    if jitter != lam:
        logger.debug("KRR: jitter escalado de %.3e para %.3e", lam, jitter)
    return KrrModel(spec=spec, weight=weight, X_train=X, beta=beta, lam=lam, jitter_used=jitter)


def predict(model: KrrModel, Z) -> NDArray:
    return kernels.gram(model.spec, Z, model.X_train, model.weight) @ model.beta


def predict_gradient(model: KrrModel, Z) -> NDArray:
    """Matriz m×d com ∇_z f̂(z_i) em cada linha; m×C×d para modelos com C saídas."""
    if model.beta.ndim == 1:
        return kernels.contract_input_gradient(model.spec, Z, model.X_train, model.weight, model.beta)
    return np.stack(
        [kernels.contract_input_gradient(model.spec, Z, model.X_train, model.weight, b) for b in model.beta.T],
        axis=1,
    )


def test_mse(model: KrrModel, Z, y_test) -> float:
    y_test = np.asarray(y_test, dtype=float)
    pred = predict(model, Z)
    if pred.shape != y_test.shape:
        raise DimensionMismatchError(f"{pred.shape[0]} predições para {y_test.shape} rótulos")
    return float(np.mean((pred - y_test) ** 2))


# pytest não deve coletar isto como teste
test_mse.__test__ = False


def classification_metrics(model: KrrModel, Z, y_test, threshold: float = 0.5) -> dict:
    """
    Binário (rótulos {0, 1}): acurácia com limiar 0.5 e AUC.
    Multiclasse (y_test one-hot m×C): acurácia pelo argmax das C saídas.
    """
    y_test = np.asarray(y_test, dtype=float)
    scores = predict(model, Z)
    if y_test.ndim == 2:
        if scores.shape != y_test.shape:
            raise DimensionMismatchError(f"saídas {scores.shape} para rótulos {y_test.shape}")
        accuracy = accuracy_score(np.argmax(y_test, axis=1), np.argmax(scores, axis=1))
        return {"accuracy": float(accuracy), "auc": None, "classes": int(y_test.shape[1])}
    metrics = {"accuracy": float(accuracy_score(y_test, (scores >= threshold).astype(float)))}
    if np.unique(y_test).size == 2:
        metrics["auc"] = float(roc_auc_score(y_test, scores))
    else:
        metrics["auc"] = None
    return metrics
