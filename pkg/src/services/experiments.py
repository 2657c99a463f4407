# src/services/experiments.py
# Orquestração de execuções e varreduras, e escrita dos artefatos.

import json
import logging
import os
import subprocess
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import pandas as pd
from tqdm import tqdm

from src.errors import ConfigError
from src.models.dataset import CsvSchema, Dataset, TargetSpec
from src.models.experiment_config import ExperimentConfig, TrainConfig
from src.models.krr_model import KrrModel
from src.models.trace import StepRecord, TrainTrace
from src.services import data_io, krr, trainers
from src.services.target_parser import parse_target

logger = logging.getLogger(__name__)

BASE_VERSION = "0.1.0"
TRACE_FILE = "trace.jsonl"
TIMINGS_FILE = "timings.jsonl"
SUMMARY_FILE = "summary.json"
SWEEP_FILE = "sweep.csv"
PLOTDATA_FILE = "plotdata.csv"


@dataclass
class RunResult:
    method: str
    seed: int
    d: int
    n: int
    model: KrrModel
    trace: TrainTrace
    baseline_mse: Optional[float]
    classification: Optional[dict]


def version_string() -> str:
    """Saída de `git describe`, ou a versão base fora de um repositório git."""
    try:
        out = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            capture_output=True, text=True, timeout=5, cwd=Path(__file__).resolve().parent,
        )
        if out.returncode == 0 and out.stdout.strip():
            return out.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return BASE_VERSION


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError("config", f"arquivo não encontrado: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"JSON inválido em {path}: {exc}") from exc
    return ExperimentConfig.from_dict(data)


# --- Dados ---

def build_target(config: ExperimentConfig, seed: int) -> TargetSpec:
    f = parse_target(config.target, config.d)
    rotation = None
    if config.rotation:
        rotation = data_io.random_rotation(config.d, data_io.substream(seed, data_io.STREAM_ROTATION))
    return TargetSpec(f=f, rotation=rotation, noise_sigma=config.noise_sigma)


def _csv_data(config: ExperimentConfig, seed: int) -> tuple[Dataset, Dataset]:
    csv = config.csv
    schema = CsvSchema(csv.label_column, csv.feature_columns, csv.normalization)
    train = data_io.load_csv(csv.train_path, schema)
    if csv.test_path is not None:
        test = data_io.load_csv(csv.test_path, schema, stats=train.meta["normalization"])
    else:
        train, test = data_io.train_test_split(train, csv.test_fraction, data_io.substream(seed, data_io.STREAM_SPLIT))
    if config.d is not None and config.d != train.d:
        raise ConfigError("d", f"o CSV tem {train.d} colunas de atributos, a configuração diz {config.d}")
    if csv.task == "multiclass":
        train = data_io.one_hot_labels(train)
        test = data_io.one_hot_labels(test, classes=train.meta["classes"])
        logger.info("multiclasse: %d classes", len(train.meta["classes"]))
    return train, test


# --- Execução ---

def execute(config: ExperimentConfig, seed: int, n: Optional[int] = None) -> RunResult:
    """Roda o método configurado para uma semente (e um n, em varreduras)."""
    target = None
    if config.distribution == "csv":
        train, test_set = _csv_data(config, seed)
        source = data_io.FixedSource(train)
        d, n = train.d, train.n
    else:
        d = config.d
        n = n if n is not None else config.n
        if n is None:
            raise ConfigError("n", "informe n para uma execução única")
        target = build_target(config, seed)
        source = data_io.SyntheticSource(target, config.distribution, n, seed,
                                         resample=config.resample, pool_factor=config.pool_factor)
        test_size = config.test_size or data_io.default_test_size(n)
        test_set = data_io.synthetic_dataset(target, config.distribution, test_size, seed, data_io.STREAM_TEST)

    tc: TrainConfig = config.train_config(d, n, seed)
    first = source.batch(1)
    baseline_model, baseline_mse = trainers.krr_baseline(tc, first.X, first.y, test_set)

    if config.method == "krr":
        model = baseline_model
        trace = TrainTrace(method="krr")
        trace.append(StepRecord(step=1, test_mse=baseline_mse, sigma=model.spec.bandwidth,
                                jitter=model.jitter_used, wall_ms=0.0))
        trace.best_index = 0
    elif config.method == "irkm":
        model, trace = trainers.irkm_run(tc, source, test_set)
    else:
        truth = None
        if target is not None:
            truth = data_io.ground_truth_agop(target, config.distribution, config.ground_truth_samples,
                                              data_io.substream(seed, data_io.STREAM_GROUND_TRUTH))
        model, trace = trainers.rfm_run(tc, source, test_set, ground_truth_agop=truth)

    classification = None
    if config.csv is not None and config.csv.task in ("binary", "multiclass"):
        classification = krr.classification_metrics(model, test_set.X, test_set.y)
    return RunResult(config.method, seed, d, n, model, trace,
                     None if config.method == "krr" else baseline_mse, classification)


def summarize(result: RunResult, config: ExperimentConfig) -> dict:
    best = result.trace.best
    summary = {
        "method": result.method,
        "seed": result.seed,
        "d": result.d,
        "n": result.n,
        "steps_run": len(result.trace),
        "best_step": best.step,
        "best_test_mse": best.test_mse,
        "final_test_mse": result.trace.steps[-1].test_mse,
        "baseline_test_mse": result.baseline_mse,
        "model": result.model.to_dict(),
        "config": config.to_dict(),
        "version": version_string(),
    }
    if best.weights is not None:
        summary["best_weights"] = best.weights
    if best.eigvals is not None:
        summary["best_eigvals"] = best.eigvals
    if result.classification is not None:
        summary["classification"] = result.classification
    return summary


def write_run(result: RunResult, config: ExperimentConfig, run_dir) -> Path:
    """Escreve trace.jsonl, timings.jsonl e summary.json em `run_dir`."""
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    with open(run_dir / TRACE_FILE, "w", encoding="utf-8", newline="\n") as fh:
        for record in result.trace.steps:
            fh.write(json.dumps(record.to_dict()) + "\n")
    with open(run_dir / TIMINGS_FILE, "w", encoding="utf-8", newline="\n") as fh:
        for record in result.trace.steps:
            fh.write(json.dumps({"step": record.step, "wall_ms": record.wall_ms}) + "\n")
    (run_dir / SUMMARY_FILE).write_text(json.dumps(summarize(result, config), indent=2) + "\n", encoding="utf-8")
    logger.info("Artefatos gravados em %s", run_dir)
    return run_dir


def run(config: ExperimentConfig, out_dir=None) -> list[Path]:
    """Uma execução por semente, cada uma em out_dir/seed_<s>/."""
    out_dir = Path(out_dir or config.out_dir)
    paths = []
    for seed in config.seeds:
        result = execute(config, seed)
        paths.append(write_run(result, config, out_dir / f"seed_{seed}"))
    return paths


# --- Varredura ---

def _sweep_task(config_dict: dict, n: int, seed: int, run_dir: str) -> list[dict]:
    config = ExperimentConfig.from_dict(config_dict)
    result = execute(config, seed, n)
    write_run(result, config, run_dir)
    rows = [{"method": result.method, "d": result.d, "n": n, "seed": seed,
             "step_best": result.trace.best_step(), "test_mse": result.trace.best.test_mse}]
    if result.baseline_mse is not None:
        rows.append({"method": "krr", "d": result.d, "n": n, "seed": seed,
                     "step_best": 1, "test_mse": result.baseline_mse})
    return rows


def worker_count() -> int:
    threads = os.environ.get("IRKM_THREADS")
    if threads:
        try:
            return max(1, int(threads))
        except ValueError:
            logger.warning("IRKM_THREADS inválido (%r); usando o número de CPUs", threads)
    return os.cpu_count() or 1


def aggregate(rows: pd.DataFrame) -> pd.DataFrame:
    """Média e desvio padrão (populacional) de test_mse por (method, n)."""
    grouped = rows.groupby(["method", "n"], sort=True)["test_mse"]
    return grouped.agg(mean="mean", std=lambda s: s.std(ddof=0), count="count").reset_index()


def sweep(config: ExperimentConfig, out_dir=None, workers: Optional[int] = None) -> tuple[Path, Path]:
    """Todas as execuções (n, semente) da grade, em paralelo, mais sweep.csv e plotdata.csv."""
    if config.distribution == "csv":
        raise ConfigError("distribution", "varreduras de n exigem dados sintéticos")
    out_dir = Path(out_dir or config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tasks = [(n, seed) for n in config.grid() for seed in config.seeds]
    workers = min(workers or worker_count(), len(tasks))
    logger.info("Varredura: %d execuções com %d processo(s)", len(tasks), workers)

    rows: list[dict] = []
    config_dict = config.to_dict()
    if workers <= 1:
        for n, seed in tqdm(tasks, desc="sweep"):
            rows.extend(_sweep_task(config_dict, n, seed, str(out_dir / f"n{n}" / f"seed_{seed}")))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_sweep_task, config_dict, n, seed, str(out_dir / f"n{n}" / f"seed_{seed}"))
                       for n, seed in tasks]
            for future in tqdm(as_completed(futures), total=len(futures), desc="sweep"):
                rows.extend(future.result())

    frame = pd.DataFrame(rows, columns=["method", "d", "n", "seed", "step_best", "test_mse"])
    frame = frame.sort_values(["method", "n", "seed"], kind="stable").reset_index(drop=True)
    sweep_path = out_dir / SWEEP_FILE
    plot_path = out_dir / PLOTDATA_FILE
    frame.to_csv(sweep_path, index=False, float_format="%.17g")
    aggregate(frame).to_csv(plot_path, index=False, float_format="%.17g")
    logger.info("Varredura gravada em %s e %s", sweep_path, plot_path)
    return sweep_path, plot_path
