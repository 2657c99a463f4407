# src/services/data_io.py
# Amostradores sintéticos, rótulos com ruído, leitura de CSV tabular e
# fluxos determinísticos de números aleatórios.

import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from scipy.linalg import qr
from sklearn.preprocessing import OneHotEncoder

from src.errors import (
    DataFileNotFoundError,
    DimensionMismatchError,
    EmptyDataSourceError,
    MissingColumnError,
    ParseError,
)
from src.models.dataset import CsvSchema, Dataset, TargetSpec
from src.services.orthopoly import eval_fourier, gradient_fourier

logger = logging.getLogger(__name__)

DISTRIBUTIONS = ("hypercube", "gaussian")

# Identificadores dos subfluxos derivados de uma semente
STREAM_TRAIN = 0
STREAM_TEST = 1
STREAM_ROTATION = 2
STREAM_GROUND_TRUTH = 3
STREAM_SPLIT = 4

MAX_TEST_SIZE = 10_000
STD_FLOOR = 1e-12


# --- Fluxos aleatórios ---

def substream(seed: int, *ids: int) -> np.random.Generator:
    """
    Gerador Philox (baseado em contador) com chave derivada de (seed, ids).
    Subfluxos distintos nunca compartilham estado.
    """
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(i) for i in ids))
    return np.random.Generator(np.random.Philox(sequence))


# --- Amostradores ---

def sample_hypercube(n: int, d: int, rng: np.random.Generator) -> NDArray:
    return 2.0 * rng.integers(0, 2, size=(n, d)).astype(float) - 1.0


def sample_gaussian(n: int, d: int, rng: np.random.Generator) -> NDArray:
    return rng.standard_normal((n, d))


def sample(distribution: str, n: int, d: int, rng: np.random.Generator) -> NDArray:
    if distribution == "hypercube":
        return sample_hypercube(n, d, rng)
    if distribution == "gaussian":
        return sample_gaussian(n, d, rng)
    raise ValueError(f"distribuição '{distribution}' desconhecida; use uma de {DISTRIBUTIONS}")


def random_rotation(d: int, rng: np.random.Generator) -> NDArray:
    """Rotação de Haar: QR de uma matriz gaussiana com a diagonal de R positiva."""
    Q, R = qr(rng.standard_normal((d, d)))
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


def label(target: TargetSpec, X, rng: Optional[np.random.Generator] = None) -> NDArray:
    """y_i = f(U x_i) + σ_ε ξ_i."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != target.d:
        raise DimensionMismatchError(f"X deve ter {target.d} colunas, recebido shape {X.shape}")
    Z = X if target.rotation is None else X @ target.rotation.T
    y = eval_fourier(target.f, Z)
    if target.noise_sigma > 0:
        if rng is None:
            raise ValueError("um gerador é necessário quando noise_sigma > 0")
        y = y + target.noise_sigma * rng.standard_normal(y.shape[0])
    return y


def synthetic_dataset(target: TargetSpec, distribution: str, n: int, seed: int, *ids: int) -> Dataset:
    """Amostra X e rótulos em dois subfluxos irmãos de (seed, *ids)."""
    X = sample(distribution, n, target.d, substream(seed, *ids, 0))
    y = label(target, X, substream(seed, *ids, 1))
    return Dataset(X, y, {"source": distribution, "seed": seed, "stream": list(ids)})


def default_test_size(n: int) -> int:
    return min(10 * n, MAX_TEST_SIZE)


def ground_truth_agop(
    target: TargetSpec, distribution: str, n_samples: int, rng: np.random.Generator, chunk: int = 10_000
) -> NDArray:
    """Monte Carlo de E[∇f∇fᵀ] com ∇_x f(Ux) = Uᵀ ∇f(Ux)."""
    d = target.d
    acc = np.zeros((d, d))
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        X = sample(distribution, m, d, rng)
        if target.rotation is None:
            G = gradient_fourier(target.f, X)
        else:
            G = gradient_fourier(target.f, X @ target.rotation.T) @ target.rotation
        acc += G.T @ G
        done += m
    acc /= n_samples
    return (acc + acc.T) / 2.0


# --- Fontes de dados para os treinadores ---

class SyntheticSource:
    """
    Lotes de tamanho n por passo. Com `resample` cada passo t usa o subfluxo
    (seed, TRAIN, t); com `pool_factor` k > 0 um pool de k·n amostras é
    percorrido em blocos de n; sem `resample` o lote do passo 1 é reutilizado.
    """

    def __init__(self, target: TargetSpec, distribution: str, n: int, seed: int,
                 resample: bool = True, pool_factor: int = 0):
        if n < 1:
            raise EmptyDataSourceError("n_per_step deve ser ≥ 1")
        self.target = target
        self.distribution = distribution
        self.n = n
        self.seed = seed
        self.resample = resample
        self.pool_factor = pool_factor
        self._pool: Optional[Dataset] = None

    def batch(self, step: int) -> Dataset:
        if not self.resample:
            step = 1
        if self.resample and self.pool_factor > 0:
            if self._pool is None:
                self._pool = synthetic_dataset(
                    self.target, self.distribution, self.pool_factor * self.n, self.seed, STREAM_TRAIN, 0
                )
            start = ((step - 1) % self.pool_factor) * self.n
            rows = slice(start, start + self.n)
            return Dataset(self._pool.X[rows], self._pool.y[rows], self._pool.meta)
        return synthetic_dataset(self.target, self.distribution, self.n, self.seed, STREAM_TRAIN, step)


class FixedSource:
    """Sempre o mesmo conjunto de treino (dados tabulares reutilizados a cada passo)."""

    def __init__(self, dataset: Dataset):
        if dataset.n == 0:
            raise EmptyDataSourceError("conjunto de treino vazio")
        self.dataset = dataset
        self.n = dataset.n

    def batch(self, step: int) -> Dataset:
        return self.dataset


# --- CSV ---

def fit_normalization(X: NDArray, method: str) -> dict:
    if method == "zscore":
        std = X.std(axis=0)
        return {"method": method, "shift": X.mean(axis=0), "scale": np.where(std < STD_FLOOR, 1.0, std)}
    if method == "minus_one_one":
        lo, hi = X.min(axis=0), X.max(axis=0)
        half = (hi - lo) / 2.0
        return {"method": method, "shift": (hi + lo) / 2.0, "scale": np.where(half < STD_FLOOR, 1.0, half)}
    return {"method": "none", "shift": np.zeros(X.shape[1]), "scale": np.ones(X.shape[1])}


def apply_normalization(X: NDArray, stats: dict) -> NDArray:
    return (X - stats["shift"]) / stats["scale"]


def _numeric_column(frame: pd.DataFrame, column: str) -> NDArray:
    raw = frame[column].astype(str).str.strip()
    values = pd.to_numeric(raw, errors="coerce")
    bad = values.isna().to_numpy()
    if bad.any():
        row = int(np.argmax(bad))
        # linha 1 é o cabeçalho
        raise ParseError(f"valor não numérico '{raw.iloc[row]}'", row=row + 2, column=column)
    return values.to_numpy(dtype=float)


def load_csv(path, schema: CsvSchema, stats: Optional[dict] = None) -> Dataset:
    """
    Lê um CSV com cabeçalho (RFC-4180, UTF-8). A normalização é ajustada
    neste arquivo, a menos que `stats` de outro split seja fornecido.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, encoding="utf-8", keep_default_na=False)
    except FileNotFoundError as exc:
        raise DataFileNotFoundError(f"arquivo não encontrado: {path}") from exc
    except pd.errors.EmptyDataError as exc:
        raise ParseError(f"arquivo vazio: {path}") from exc
    except pd.errors.ParserError as exc:
        raise ParseError(f"CSV malformado em {path}: {exc}") from exc

    columns = list(frame.columns)
    if schema.label_column not in columns:
        raise MissingColumnError(f"coluna de rótulo '{schema.label_column}' ausente em {path}")
    features: Sequence[str] = schema.feature_columns or [c for c in columns if c != schema.label_column]
    missing = [c for c in features if c not in columns]
    if missing:
        raise MissingColumnError(f"colunas ausentes em {path}: {missing}")

    y = _numeric_column(frame, schema.label_column)
    X = np.column_stack([_numeric_column(frame, c) for c in features]) if len(frame) else np.zeros((0, len(features)))
    if stats is None:
        stats = fit_normalization(X, schema.normalization)
    X = apply_normalization(X, stats)
    logger.info("CSV carregado: %s (%d linhas, %d colunas)", path, X.shape[0], X.shape[1])
    return Dataset(X, y, {"source": "csv", "path": str(path), "features": list(features), "normalization": stats})


def train_test_split(dataset: Dataset, test_fraction: float, rng: np.random.Generator) -> tuple[Dataset, Dataset]:
    """Divisão aleatória; a normalização é reajustada no treino e aplicada ao teste."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction deve estar em (0, 1)")
    order = rng.permutation(dataset.n)
    n_test = max(1, int(round(test_fraction * dataset.n)))
    test_idx, train_idx = order[:n_test], order[n_test:]
    stats = dataset.meta.get("normalization")
    X = dataset.X if stats is None else dataset.X * stats["scale"] + stats["shift"]
    method = stats["method"] if stats is not None else "none"
    train_stats = fit_normalization(X[train_idx], method)
    meta = {**dataset.meta, "normalization": train_stats}
    return (
        Dataset(apply_normalization(X[train_idx], train_stats), dataset.y[train_idx], meta),
        Dataset(apply_normalization(X[test_idx], train_stats), dataset.y[test_idx], meta),
    )


def one_hot_labels(dataset: Dataset, classes: Optional[NDArray] = None) -> Dataset:
    """
    Rótulos de classe (códigos numéricos) viram uma matriz n×C one-hot.
    As classes vêm do próprio conjunto, a menos que sejam fornecidas; uma
    classe desconhecida vira uma linha de zeros.
    """
    y = np.asarray(dataset.y)
    if y.ndim != 1:
        raise DimensionMismatchError(f"rótulos de classe devem ser um vetor, recebido shape {y.shape}")
    classes = np.unique(y) if classes is None else np.asarray(classes, dtype=float)
    if classes.shape[0] < 2:
        raise EmptyDataSourceError("multiclasse exige ao menos duas classes no treino")
    encoder = OneHotEncoder(categories=[classes], handle_unknown="ignore", sparse_output=False)
    Y = encoder.fit_transform(y.reshape(-1, 1))
    return Dataset(dataset.X, Y, {**dataset.meta, "classes": [float(c) for c in classes]})
