# src/commands/experiments.py
# Comandos `irkm run` e `irkm sweep`.

import functools
import logging
import sys

import click
from numpy.linalg import LinAlgError

from src.errors import ConfigError, IrkmError
from src.services import experiments

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def exit_on_errors(fn):
    """Converte erros conhecidos em códigos de saída: configuração → 2, execução → 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConfigError as exc:
            click.echo(f"ERRO: configuração inválida ({exc})", err=True)
            sys.exit(EXIT_CONFIG)
        except (IrkmError, LinAlgError, FloatingPointError) as exc:
            click.echo(f"ERRO: falha na execução: {exc}", err=True)
            logger.debug("Detalhes da falha", exc_info=True)
            sys.exit(EXIT_NUMERICAL)

    return wrapper


@click.command("run")
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Sobrescreve o out_dir da configuração.")
@exit_on_errors
def run_cmd(config_path, out_dir):
    """Executa o experimento descrito em CONFIG_PATH (uma execução por semente)."""
    config = experiments.load_config(config_path)
    paths = experiments.run(config, out_dir)
    for path in paths:
        click.echo(f"INFO: {path}")


@click.command("sweep")
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="Sobrescreve o out_dir da configuração.")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Número de processos (padrão: IRKM_THREADS ou o número de CPUs).")
@exit_on_errors
def sweep_cmd(config_path, out_dir, workers):
    """Varre a grade de n (n_values ou n_exponents) para todas as sementes."""
    config = experiments.load_config(config_path)
    sweep_path, plot_path = experiments.sweep(config, out_dir, workers)
    click.echo(f"INFO: {sweep_path}")
    click.echo(f"INFO: {plot_path}")
