# src/commands/tools.py
# Comandos auxiliares: `irkm verify` e `irkm parse-target`.

import json
import sys

import click

from src.errors import ParseError, TooManyTermsError
from src.services import orthopoly, verification
from src.services.target_parser import parse_target


@click.command("verify")
@click.option("--only", "names", multiple=True, help="Roda só as verificações nomeadas (repetível).")
@click.option("--list", "list_only", is_flag=True, help="Lista as verificações registradas e sai.")
def verify_cmd(names, list_only):
    """Roda os oráculos e invariantes em pequena escala; sai com 1 se algo falhar."""
    if list_only:
        for name in verification.CHECKS:
            click.echo(name)
        return
    unknown = [n for n in names if n not in verification.CHECKS]
    if unknown:
        raise click.BadParameter(f"desconhecidas: {', '.join(unknown)}", param_hint="--only")
    results = verification.run_checks(names or None)
    click.echo(verification.format_table(results))
    if not all(r.passed for r in results):
        sys.exit(1)


@click.command("parse-target")
@click.argument("expression")
@click.option("--d", "d", type=click.IntRange(min=1), default=None, help="Dimensão ambiente (padrão: maior índice).")
@click.option("--json", "as_json", is_flag=True, help="Imprime o polinômio como JSON.")
def parse_target_cmd(expression, d, as_json):
    """Lê um polinômio alvo e mostra a forma normalizada, o grau e a complexidade de salto."""
    try:
        f = parse_target(expression, d)
    except ParseError as exc:
        click.echo(f"ERRO: {exc}", err=True)
        sys.exit(2)
    if as_json:
        click.echo(json.dumps(f.to_dict()))
        return
    click.echo(f.to_text())
    try:
        leap = orthopoly.leap_complexity(f)
    except TooManyTermsError:
        leap = None
    click.echo(f"d={f.d} termos={len(f)} grau={f.degree} salto={'-' if leap is None else leap}")
