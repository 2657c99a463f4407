# src/models/experiment_config.py
# Configuração dos treinadores e esquema estrito do JSON de experimentos.

from dataclasses import asdict, dataclass, field
from typing import Any, Optional, Union

from src.errors import ConfigError, ParseError
from src.models.dataset import NORMALIZATIONS
from src.models.kernel_spec import FAMILIES, KernelSpec
from src.services.target_parser import parse_target

METHODS = ("krr", "irkm", "rfm")
DATA_DISTRIBUTIONS = ("hypercube", "gaussian", "csv")
TASKS = ("regression", "binary", "multiclass")
EPS_RULE = "d^-0.75"
EPS_EXPONENT = -0.75


def resolve_eps_s(eps_s: Union[float, str], d: int) -> float:
    if eps_s == EPS_RULE:
        return float(d) ** EPS_EXPONENT
    return float(eps_s)


@dataclass(frozen=True)
class TrainConfig:
    alpha: float
    eps_s: Union[float, str]
    T: int
    lam: float
    kernel: KernelSpec
    n_per_step: int
    resample: bool = True
    early_stop_patience: int = 3
    seed: int = 0
    subspace_rank: int = 4

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError("alpha", f"{self.alpha} fora de [0, 1]")
        if isinstance(self.eps_s, str):
            if self.eps_s != EPS_RULE:
                raise ConfigError("eps_s", f"regra desconhecida '{self.eps_s}'; use um número ou '{EPS_RULE}'")
        elif not self.eps_s > 0:
            raise ConfigError("eps_s", "a salvaguarda deve ser positiva")
        if self.T < 1:
            raise ConfigError("T", "são necessários ao menos 1 passo")
        if self.lam < 0:
            raise ConfigError("lambda", "deve ser ≥ 0")
        if self.n_per_step < 1:
            raise ConfigError("n", "n_per_step deve ser ≥ 1")
        if self.early_stop_patience < 0:
            raise ConfigError("early_stop_patience", "deve ser ≥ 0")
        if not 1 <= self.subspace_rank <= self.kernel.d:
            raise ConfigError("subspace_rank", f"deve estar em [1, {self.kernel.d}]")

    @property
    def d(self):
        return self.kernel.d

    @property
    def eps_value(self) -> float:
        return resolve_eps_s(self.eps_s, self.d)


# --- Esquema JSON ---

def _require(cond: bool, key: str, message: str):
    if not cond:
        raise ConfigError(key, message)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_keys(data: dict, allowed: tuple, prefix: str = ""):
    if not isinstance(data, dict):
        raise ConfigError(prefix.rstrip(".") or "config", "um objeto JSON é esperado")
    for key in data:
        if key not in allowed:
            raise ConfigError(f"{prefix}{key}", "chave desconhecida")


@dataclass(frozen=True)
class KernelConfig:
    family: str = "laplacian_radial"
    sigma: Optional[float] = None
    degree: int = 2
    offset: float = 1.0
    scale: float = 1.0

    KEYS = ("family", "sigma", "degree", "offset", "scale")

    @classmethod
    def from_dict(cls, data: dict) -> "KernelConfig":
        _check_keys(data, cls.KEYS, "kernel.")
        family = data.get("family", cls.family)
        _require(family in FAMILIES, "kernel.family", f"'{family}' inválida; use uma de {FAMILIES}")
        sigma = data.get("sigma", "auto")
        _require(sigma == "auto" or (_is_number(sigma) and sigma > 0), "kernel.sigma", "use 'auto' ou um número positivo")
        degree = data.get("degree", cls.degree)
        _require(_is_int(degree) and degree >= 1, "kernel.degree", "inteiro ≥ 1 esperado")
        offset = data.get("offset", cls.offset)
        _require(_is_number(offset) and offset >= 0, "kernel.offset", "número ≥ 0 esperado")
        scale = data.get("scale", cls.scale)
        _require(_is_number(scale) and scale > 0, "kernel.scale", "número positivo esperado")
        return cls(family, None if sigma == "auto" else float(sigma), degree, float(offset), float(scale))

    def to_spec(self, d: int) -> KernelSpec:
        return KernelSpec(self.family, d, self.sigma, self.scale, self.degree, self.offset)

    def to_dict(self):
        return {
            "family": self.family,
            "sigma": "auto" if self.sigma is None else self.sigma,
            "degree": self.degree,
            "offset": self.offset,
            "scale": self.scale,
        }


@dataclass(frozen=True)
class CsvConfig:
    train_path: str
    label_column: str
    test_path: Optional[str] = None
    test_fraction: Optional[float] = None
    feature_columns: Optional[tuple] = None
    normalization: str = "zscore"
    task: str = "regression"

    KEYS = ("train_path", "test_path", "test_fraction", "label_column", "feature_columns", "normalization", "task")

    @classmethod
    def from_dict(cls, data: dict) -> "CsvConfig":
        _check_keys(data, cls.KEYS, "csv.")
        _require(isinstance(data.get("train_path"), str), "csv.train_path", "caminho obrigatório")
        _require(isinstance(data.get("label_column"), str), "csv.label_column", "coluna obrigatória")
        test_path = data.get("test_path")
        test_fraction = data.get("test_fraction")
        _require((test_path is None) != (test_fraction is None), "csv.test_path",
                 "informe exatamente um de test_path ou test_fraction")
        if test_fraction is not None:
            _require(_is_number(test_fraction) and 0 < test_fraction < 1, "csv.test_fraction", "deve estar em (0, 1)")
        features = data.get("feature_columns")
        if features is not None:
            _require(isinstance(features, list) and all(isinstance(c, str) for c in features),
                     "csv.feature_columns", "lista de nomes esperada")
            features = tuple(features)
        normalization = data.get("normalization", "zscore")
        _require(normalization in NORMALIZATIONS, "csv.normalization", f"use uma de {NORMALIZATIONS}")
        task = data.get("task", "regression")
        _require(task in TASKS, "csv.task", f"use uma de {TASKS}")
        return cls(data["train_path"], data["label_column"], test_path,
                   None if test_fraction is None else float(test_fraction), features, normalization, task)

    def to_dict(self):
        data = asdict(self)
        if self.feature_columns is not None:
            data["feature_columns"] = list(self.feature_columns)
        return data


@dataclass(frozen=True)
class ExperimentConfig:
    method: str
    distribution: str
    d: Optional[int] = None
    n: Optional[int] = None
    n_exponents: Optional[tuple] = None
    n_values: Optional[tuple] = None
    T: int = 20
    alpha: float = 0.5
    eps_s: Union[float, str] = EPS_RULE
    lam: float = 1e-3
    kernel: KernelConfig = field(default_factory=KernelConfig)
    target: Optional[str] = None
    rotation: bool = False
    noise_sigma: float = 0.1
    seeds: tuple = (0,)
    test_size: Optional[int] = None
    resample: bool = True
    out_dir: str = "runs"
    early_stop_patience: int = 3
    pool_factor: int = 0
    ground_truth_samples: int = 100_000
    subspace_rank: int = 4
    csv: Optional[CsvConfig] = None

    KEYS = (
        "method", "distribution", "d", "n", "n_exponents", "n_values", "T", "alpha", "eps_s", "lambda",
        "kernel", "target", "rotation", "noise_sigma", "seeds", "test_size", "resample", "out_dir",
        "early_stop_patience", "pool_factor", "ground_truth_samples", "subspace_rank", "csv",
    )

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        """Valida o JSON; chaves desconhecidas são erro."""
        _check_keys(data, cls.KEYS)
        method = data.get("method")
        _require(method in METHODS, "method", f"use um de {METHODS}")
        distribution = data.get("distribution", "hypercube")
        _require(distribution in DATA_DISTRIBUTIONS, "distribution", f"use uma de {DATA_DISTRIBUTIONS}")

        d = data.get("d")
        if distribution == "csv":
            _require("csv" in data, "csv", "bloco obrigatório quando distribution = csv")
            _require(d is None or (_is_int(d) and d >= 1), "d", "inteiro ≥ 1 esperado")
        else:
            _require(_is_int(d) and d >= 1, "d", "inteiro ≥ 1 obrigatório")
            _require(isinstance(data.get("target"), str), "target", "polinômio alvo obrigatório")
            try:
                parse_target(data["target"], d)
            except ParseError as exc:
                raise ConfigError("target", str(exc)) from exc

        n = data.get("n")
        if n is not None:
            _require(_is_int(n) and n >= 1, "n", "inteiro ≥ 1 esperado")
        n_exponents = data.get("n_exponents")
        if n_exponents is not None:
            _require(isinstance(n_exponents, list) and n_exponents and all(_is_number(e) and e > 0 for e in n_exponents),
                     "n_exponents", "lista não vazia de expoentes positivos esperada")
            n_exponents = tuple(float(e) for e in n_exponents)
        n_values = data.get("n_values")
        if n_values is not None:
            _require(isinstance(n_values, list) and n_values and all(_is_int(v) and v >= 1 for v in n_values),
                     "n_values", "lista não vazia de inteiros ≥ 1 esperada")
            n_values = tuple(n_values)
        if distribution != "csv":
            _require(n is not None or n_exponents is not None or n_values is not None,
                     "n", "informe n, n_exponents ou n_values")

        T = data.get("T", cls.T)
        _require(_is_int(T) and T >= 1, "T", "inteiro ≥ 1 esperado")
        alpha = data.get("alpha", cls.alpha)
        _require(_is_number(alpha) and 0 <= alpha <= 1, "alpha", f"{alpha!r} fora de [0, 1]")
        eps_s = data.get("eps_s", EPS_RULE)
        _require(eps_s == EPS_RULE or (_is_number(eps_s) and eps_s > 0), "eps_s",
                 f"use um número positivo ou '{EPS_RULE}'")
        lam = data.get("lambda", cls.lam)
        _require(_is_number(lam) and lam >= 0, "lambda", "número ≥ 0 esperado")
        kernel = KernelConfig.from_dict(data.get("kernel", {}))
        rotation = data.get("rotation", False)
        _require(isinstance(rotation, bool), "rotation", "booleano esperado")
        noise_sigma = data.get("noise_sigma", cls.noise_sigma)
        _require(_is_number(noise_sigma) and noise_sigma >= 0, "noise_sigma", "número ≥ 0 esperado")
        seeds = data.get("seeds", [0])
        _require(isinstance(seeds, list) and seeds and all(_is_int(s) and s >= 0 for s in seeds),
                 "seeds", "lista não vazia de inteiros ≥ 0 esperada")
        test_size = data.get("test_size")
        _require(test_size is None or (_is_int(test_size) and test_size >= 1), "test_size", "inteiro ≥ 1 esperado")
        resample = data.get("resample", True)
        _require(isinstance(resample, bool), "resample", "booleano esperado")
        out_dir = data.get("out_dir", cls.out_dir)
        _require(isinstance(out_dir, str) and out_dir, "out_dir", "caminho esperado")
        patience = data.get("early_stop_patience", cls.early_stop_patience)
        _require(_is_int(patience) and patience >= 0, "early_stop_patience", "inteiro ≥ 0 esperado")
        pool_factor = data.get("pool_factor", cls.pool_factor)
        _require(_is_int(pool_factor) and pool_factor >= 0, "pool_factor", "inteiro ≥ 0 esperado")
        gt_samples = data.get("ground_truth_samples", cls.ground_truth_samples)
        _require(_is_int(gt_samples) and gt_samples >= 1, "ground_truth_samples", "inteiro ≥ 1 esperado")
        rank = data.get("subspace_rank", cls.subspace_rank)
        _require(_is_int(rank) and rank >= 1, "subspace_rank", "inteiro ≥ 1 esperado")
        if d is not None:
            _require(rank <= d, "subspace_rank", f"deve ser ≤ d = {d}")
        csv = CsvConfig.from_dict(data["csv"]) if data.get("csv") is not None else None

        return cls(
            method=method, distribution=distribution, d=d, n=n, n_exponents=n_exponents, n_values=n_values,
            T=T, alpha=float(alpha), eps_s=eps_s if eps_s == EPS_RULE else float(eps_s), lam=float(lam),
            kernel=kernel, target=data.get("target"), rotation=rotation, noise_sigma=float(noise_sigma),
            seeds=tuple(seeds), test_size=test_size, resample=resample, out_dir=out_dir,
            early_stop_patience=patience, pool_factor=pool_factor, ground_truth_samples=gt_samples,
            subspace_rank=rank, csv=csv,
        )

    def grid(self) -> list[int]:
        """Valores de n da varredura: lista explícita, expoentes n = round(d^δ), ou n."""
        if self.n_values is not None:
            return list(self.n_values)
        if self.n_exponents is not None:
            _require(self.d is not None, "d", "necessário para n_exponents")
            return [int(round(self.d ** e)) for e in self.n_exponents]
        return [self.n]

    def train_config(self, d: int, n: int, seed: int) -> TrainConfig:
        return TrainConfig(
            alpha=self.alpha, eps_s=self.eps_s, T=self.T, lam=self.lam, kernel=self.kernel.to_spec(d),
            n_per_step=n, resample=self.resample, early_stop_patience=self.early_stop_patience,
            seed=seed, subspace_rank=min(self.subspace_rank, d),
        )

    def to_dict(self):
        return {
            "method": self.method,
            "distribution": self.distribution,
            "d": self.d,
            "n": self.n,
            "n_exponents": None if self.n_exponents is None else list(self.n_exponents),
            "n_values": None if self.n_values is None else list(self.n_values),
            "T": self.T,
            "alpha": self.alpha,
            "eps_s": self.eps_s,
            "lambda": self.lam,
            "kernel": self.kernel.to_dict(),
            "target": self.target,
            "rotation": self.rotation,
            "noise_sigma": self.noise_sigma,
            "seeds": list(self.seeds),
            "test_size": self.test_size,
            "resample": self.resample,
            "out_dir": self.out_dir,
            "early_stop_patience": self.early_stop_patience,
            "pool_factor": self.pool_factor,
            "ground_truth_samples": self.ground_truth_samples,
            "subspace_rank": self.subspace_rank,
            "csv": None if self.csv is None else self.csv.to_dict(),
        }
