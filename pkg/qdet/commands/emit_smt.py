import logging
from pathlib import Path
from typing import Annotated, Optional

import typer

from qdet.commands.common import EXIT_ERROR, exit_on_error, load_problem
from qdet.services.formula_builder import build_negated_star
from qdet.services.solver import emit_smtlib

logger = logging.getLogger(__name__)


def smt_filename(stem: str, i: int) -> str:
    return f"{stem}.neg-star.{i}.smt2"


def run(
    file: Annotated[Path, typer.Argument(help="Problem file (.qdet)")],
    output_dir: Annotated[
        Optional[Path], typer.Option("--output-dir", "-o", help="Directory for the .smt2 files")
    ] = None,
):
    """Write one SMT-LIB2 script per relation."""
    with exit_on_error():
        problem = load_problem(file)
        scripts = [emit_smtlib(build_negated_star(problem, i)) for i in range(1, problem.m + 1)]

    target = output_dir or file.parent
    try:
        target.mkdir(parents=True, exist_ok=True)
        for i, script in enumerate(scripts, start=1):
            path = target / smt_filename(file.stem, i)
            path.write_text(script, encoding="utf-8")
            typer.echo(str(path))
    except OSError as e:
        typer.echo(f"error: cannot write to {target}: {e.strerror or e}", err=True)
        raise typer.Exit(EXIT_ERROR)
    logger.info(f"Wrote {len(scripts)} SMT-LIB2 file(s) to {target}")
