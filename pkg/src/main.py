# src/main.py
# Ponto de entrada da linha de comando `irkm`: ambiente, logging e registro dos comandos.

import logging
import os

import click
from dotenv import load_dotenv

# --- Configuração do Ambiente ---
load_dotenv()

LOG_LEVEL = os.environ.get('IRKM_LOG_LEVEL', 'INFO').upper()
logging.basicConfig(level=getattr(logging, LOG_LEVEL, logging.INFO), format='%(levelname)s: %(message)s')

# --- Comandos ---
from src.commands.experiments import run_cmd, sweep_cmd
from src.commands.tools import parse_target_cmd, verify_cmd
from src.services.experiments import BASE_VERSION


@click.group()
@click.version_option(BASE_VERSION, prog_name='irkm')
def cli():
    """IRKM / RFM: aprendizado de atributos com máquinas de kernel."""


cli.add_command(run_cmd)
cli.add_command(sweep_cmd)
cli.add_command(verify_cmd)
cli.add_command(parse_target_cmd)

if __name__ == '__main__':
    cli()
