"""
CLI de Ortofree

Punto de entrada único: construct, verify, bounds, certify, search,
reproduce y serve. Códigos de salida: 0 correcto, 1 violación encontrada,
2 error de uso o de validación, 3 presupuesto agotado.
"""

import asyncio
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import click
from rich.console import Console
from rich.table import Table

from .config import Config, reload_config
from .core.bounds import TABLE_COLUMNS, bounds_table
from .core.certify import run_certificate
from .core.constructions import CONSTRUCTIONS, build_construction, corner_free_set
from .core.pointset import read_point_set
from .core.predicates import ScanStatus, scan_set
from .core.search import QUANTITIES, exact_search
from .tools.reproduce import CRITERIA, AcceptanceRunner
from .utils.formats import TABLE_FORMATS, dumps_json, render_table
from .utils.logging_setup import configure_logging
from .utils.validators import DomainError, ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

PROPERTY_CHOICES = ["right-angle", "corner", "all-right", "self-orth", "hamming"]
CERTIFICATE_CHOICES = ["p-matrix", "lemma-diag", "t-code", "all-right-tensor", "right-angle-partition"]


class OrtofreeGroup(click.Group):
    """Traduce ValidationError al código de salida 2"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ValidationError as e:
            click.echo(f"Error: {e.message}", err=True)
            ctx.exit(EXIT_USAGE)


def _config(ctx: click.Context) -> Config:
    return ctx.obj["config"]


def _read_input(path: Path):
    return read_point_set(path.read_text(encoding="utf-8"), name=path.name)


def _parse_range(text: str) -> Tuple[int, int]:
    """"a..b" o "a" -> (a, b)"""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return int(low), int(high)
        return int(text), int(text)
    except ValueError:
        raise DomainError(f"Rango inválido: {text!r} (use a..b)", field="n")


def _parse_int_list(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise DomainError(f"Lista de enteros inválida: {text!r}", field="R")


@click.group(cls=OrtofreeGroup)
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR")
@click.option("--log-format", type=click.Choice(["text", "json"]), default=None)
@click.option("--workers", type=int, default=None, help="Procesos para escaneos (o variable WORKERS)")
@click.option("--sequential", is_flag=True, help="Ejecución secuencial en todos los módulos")
@click.pass_context
def cli(ctx, log_level, log_format, workers, sequential):
    """Conjuntos libres de configuraciones en F_q^n"""
    config = reload_config()
    if log_level:
        config.log_level = log_level.upper()
    if log_format:
        config.log_format = log_format
    if workers:
        config.workers = workers
    if sequential:
        config.sequential = True
    configure_logging(config)
    ctx.ensure_object(dict)
    ctx.obj["config"] = config


@cli.command()
@click.argument("name", type=click.Choice(sorted(CONSTRUCTIONS)))
@click.option("--n", "n", type=int, required=True)
@click.option("--q", "q", type=int, default=None)
@click.option("--k", "k", type=int, default=None)
@click.option("--seed", type=int, default=None, help="Orden permutado para corner-free")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Archivo de vectores (por defecto stdout)")
@click.option("--provenance", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="JSON de procedencia (por defecto <output>.json; sin --output no se escribe)")
@click.pass_context
def construct(ctx, name, n, q, k, seed, output, provenance):
    """
    Construye un conjunto y lo escribe en formato de vectores

    La procedencia se escribe en --provenance o, si solo se da --output, en
    <output>.json. Con salida a stdout y sin --provenance no hay procedencia.
    """
    seed = seed if seed is not None else _config(ctx).packing_seed
    if name == "corner-free" and seed is not None:
        A = corner_free_set(n, q, k, order="shuffled", seed=seed)
    else:
        A = build_construction(name, n=n, q=q, k=k)

    if output is None:
        click.echo(A.to_text(), nl=False)
    else:
        output.write_text(A.to_text(), encoding="utf-8")
        provenance = provenance or output.with_name(output.name + ".json")
    if provenance is not None:
        provenance.write_text(dumps_json({"schema": 1, **A.provenance_json()}), encoding="utf-8")
        logger.info(f"Procedencia de {A.provenance['name']} en {provenance}")
    if output is not None:
        click.echo(f"{len(A)} vectores -> {output} (procedencia: {provenance})", err=True)


@cli.command()
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--property", "prop", type=click.Choice(PROPERTY_CHOICES), required=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--budget", type=int, default=None, help="Tuplas máximas examinadas")
@click.pass_context
def verify(ctx, input_path, prop, k, budget):
    """Escaneo exhaustivo; sale con 1 si encuentra una violación"""
    config = _config(ctx)
    A = _read_input(input_path)
    workers = config.effective_workers if budget is None else 1
    report = scan_set(A, prop, k, budget, workers)
    click.echo(dumps_json(report.to_json()), nl=False)
    if report.status is ScanStatus.VIOLATION:
        ctx.exit(EXIT_VIOLATION)
    if report.status is ScanStatus.BUDGET_EXCEEDED:
        ctx.exit(EXIT_BUDGET)


@cli.command()
@click.option("--property", "prop", type=click.Choice(PROPERTY_CHOICES), required=True)
@click.option("--n", "n_range", default=None, help="Rango a..b")
@click.option("--n-min", type=int, default=1)
@click.option("--n-max", type=int, default=None)
@click.option("--q", "q_values", type=int, multiple=True, required=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(TABLE_FORMATS), default="csv")
def bounds(prop, n_range, n_min, n_max, q_values, k, fmt):
    """Tabla de cotas"""
    if n_range is not None:
        n_min, n_max = _parse_range(n_range)
    if n_max is None:
        raise DomainError("Indique --n-max o --n a..b", field="n")
    rows = bounds_table(prop, range(n_min, n_max + 1), q_values, k)
    click.echo(render_table([r.to_row() for r in rows], TABLE_COLUMNS, fmt, title=f"Cotas {prop}"), nl=False)


@cli.command()
@click.argument("kind", type=click.Choice(CERTIFICATE_CHOICES))
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True)
@click.option("--alpha", type=int, default=None)
@click.option("--R", "allowed", default=None, help="Productos permitidos, p.ej. 0,2")
@click.pass_context
def certify(ctx, kind, input_path, alpha, allowed):
    """Certificado algebraico; sale con 1 si alguna cláusula falla"""
    A = _read_input(input_path)
    cert = run_certificate(kind, A, alpha, _parse_int_list(allowed))
    click.echo(dumps_json(cert.to_json()), nl=False)
    if not cert.passed:
        ctx.exit(EXIT_VIOLATION)


@cli.command()
@click.argument("quantity", type=click.Choice(list(QUANTITIES)))
@click.option("--n", "n", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--k", "k", type=int, default=None)
@click.option("--budget", type=click.IntRange(min=0), default=None, help="Nodos máximos (por defecto SEARCH_BUDGET)")
@click.option("--witness", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Escribe el testigo en formato de vectores")
@click.pass_context
def search(ctx, quantity, n, q, k, budget, witness):
    """Búsqueda exacta (siempre en un proceso); sale con 3 si se agota el presupuesto"""
    config = _config(ctx)
    budget = budget if budget is not None else config.search_budget
    result = exact_search(quantity, n, q, k, budget, config.rank_bound_depth)
    if witness is not None:
        witness.write_text(result.witness.to_text(), encoding="utf-8")
    click.echo(dumps_json(result.to_json()), nl=False)
    if not result.proven:
        ctx.exit(EXIT_BUDGET)


@cli.command()
@click.option("--only", multiple=True, help=f"Criterios: {', '.join(CRITERIA)}")
@click.option("--output-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@click.pass_context
def reproduce(ctx, only, output_dir):
    """Ejecuta los criterios de aceptación y escribe report.json y manifest.json"""
    config = _config(ctx)
    selected = [c for token in only for c in token.split(",")] or None
    runner = AcceptanceRunner(config)
    report, timings = runner.run(selected)
    command = ["ortofree", "reproduce", *(f"--only={c}" for c in selected or [])]
    runner.write(report, output_dir or Path(config.output_dir), command, selected)

    table = Table(title="Criterios de aceptación")
    table.add_column("criterio")
    table.add_column("resultado")
    table.add_column("comprobaciones", justify="right")
    table.add_column("segundos", justify="right")
    for entry in report["criteria"]:
        table.add_row(entry["id"], "OK" if entry["passed"] else "FALLA", entry["checks"],
                      f"{timings[entry['id']]:.2f}")
    Console(stderr=True).print(table)
    if not report["passed"]:
        ctx.exit(EXIT_VIOLATION)


@cli.command()
@click.option("--transport", default="stdio")
def serve(transport):
    """Inicia el servidor MCP"""
    from .server import serve as run_server

    asyncio.run(run_server(transport))


def main():
    """Punto de entrada de ortofree"""
    cli(obj={})


if __name__ == "__main__":
    main()
