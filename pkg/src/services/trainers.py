# src/services/trainers.py
# Laços IRKM(α) e RFM(α), e a linha de base de KRR sem pesos.

import logging
import time
from typing import Callable, Optional, Union

import numpy as np
from numpy.typing import NDArray

from src.errors import EmptyDataSourceError
from src.models.dataset import Dataset
from src.models.experiment_config import TrainConfig
from src.models.kernel_spec import WeightMatrix, WeightVector
from src.models.krr_model import KrrModel
from src.models.trace import StepRecord, TrainTrace, as_float_list
from src.services import feature_estimators as fe
from src.services import kernels, krr
from src.services.numerics import principal_angle, relative_matrix_error, top_k_eigenspace

logger = logging.getLogger(__name__)

Weight = Union[WeightVector, WeightMatrix]
# (modelo, lote) -> (novo peso, campos extras do registro)
StepUpdate = Callable[[KrrModel, Dataset], tuple[Weight, dict]]


def _check_test_set(test_set: Dataset):
    if test_set.n == 0:
        raise EmptyDataSourceError("conjunto de teste vazio")


def _train(method: str, config: TrainConfig, data_source, test_set: Dataset,
           weight: Weight, update: StepUpdate) -> tuple[KrrModel, TrainTrace]:
    """
    Laço comum: a cada passo ajusta KRR com o peso atual, mede a perda de
    teste e atualiza o peso. Devolve o modelo de menor perda de teste.
    """
    _check_test_set(test_set)
    trace = TrainTrace(method=method)
    best_model: Optional[KrrModel] = None
    best_mse = np.inf
    stale = 0

    for step in range(1, config.T + 1):
        started = time.perf_counter()
        batch = data_source.batch(step)
        if batch.n == 0:
            raise EmptyDataSourceError(f"lote vazio no passo {step}")
        spec = kernels.with_median_bandwidth(config.kernel, batch.X, weight)
        model = krr.fit(spec, weight, batch.X, batch.y, config.lam)
        mse = krr.test_mse(model, test_set.X, test_set.y)
        weight, extra = update(model, batch)
        record = StepRecord(
            step=step,
            test_mse=mse,
            sigma=spec.bandwidth,
            jitter=model.jitter_used,
            wall_ms=(time.perf_counter() - started) * 1000.0,
            **extra,
        )
        trace.append(record)
        logger.info("%s passo %d: test_mse=%.6g sigma=%s", method.upper(), step, mse,
                    "-" if spec.bandwidth is None else f"{spec.bandwidth:.4g}")

        if best_model is None or mse < best_mse:
            best_mse, best_model, stale = mse, model, 0
            trace.best_index = len(trace) - 1
        else:
            stale += 1
            if config.early_stop_patience and stale >= config.early_stop_patience:
                logger.info("%s: parada antecipada no passo %d (melhor passo %d)",
                            method.upper(), step, trace.best_step())
                break

    return best_model, trace


def irkm_run(config: TrainConfig, data_source, test_set: Dataset, top_r: int = 10) -> tuple[KrrModel, TrainTrace]:
    """IRKM(α): w ← (1−α)·normalize(ε_s + ∇f̂²) + α·normalize(ε_s + (1/n)D(w)⊙w)."""
    eps_s = config.eps_value

    def update(model: KrrModel, batch: Dataset):
        raw1, raw2 = fe.irkm_update_terms(model, batch.X)
        w = fe.mix(fe.safeguard_normalize(raw1, eps_s), fe.safeguard_normalize(raw2, eps_s), config.alpha)
        ranking = np.argsort(-w.w, kind="stable")[:top_r] + 1
        return w, {
            "weights": as_float_list(w.w),
            "w1_raw": as_float_list(raw1),
            "w2_raw": as_float_list(raw2),
            "top_coordinates": [int(i) for i in ranking],
        }

    return _train("irkm", config, data_source, test_set, WeightVector.uniform(config.d), update)


def rfm_run(config: TrainConfig, data_source, test_set: Dataset,
            ground_truth_agop: Optional[NDArray] = None) -> tuple[KrrModel, TrainTrace]:
    """
    RFM(α): M ← (1−α)·normalize(ε_s I + AGOP) + α·normalize(ε_s I + (1/n)√M D(M) √M).
    Com `ground_truth_agop` o traço registra o erro relativo do AGOP e o
    ângulo principal entre os subespaços top-k.
    """
    eps_s = config.eps_value
    k = config.subspace_rank
    truth_space = top_k_eigenspace(ground_truth_agop, k) if ground_truth_agop is not None else None

    def update(model: KrrModel, batch: Dataset):
        raw1, raw2 = fe.rfm_update_terms(model, batch.X)
        M = fe.mix_matrix(fe.safeguard_normalize_matrix(raw1, eps_s),
                          fe.safeguard_normalize_matrix(raw2, eps_s), config.alpha)
        extra = {
            "eigvals": as_float_list(M.eigenvalues()),
            "w1_raw": as_float_list(np.diag(raw1)),
            "w2_raw": as_float_list(np.diag(raw2)),
        }
        if truth_space is not None:
            extra["agop_error"] = relative_matrix_error(raw1, ground_truth_agop)
            extra["principal_angle"] = principal_angle(top_k_eigenspace(raw1, k), truth_space)
        return M, extra

    return _train("rfm", config, data_source, test_set, WeightMatrix.identity(config.d), update)


def krr_baseline(config: TrainConfig, X, y, test_set: Dataset) -> tuple[KrrModel, float]:
    """Um único ajuste sem pesos (w = 1_d)."""
    _check_test_set(test_set)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyDataSourceError("a linha de base exige ao menos um ponto de treino")
    model = krr.fit(config.kernel, WeightVector.uniform(config.d), X, y, config.lam)
    return model, krr.test_mse(model, test_set.X, test_set.y)
