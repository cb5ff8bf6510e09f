"""Shared plumbing for subcommands: loading problems and turning errors into exit codes."""

import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer
from pydantic import ValidationError

from qdet.errors import ParseError, QdetError
from qdet.models.problem import NormalizedProblem, Problem
from qdet.models.source import ParseDiagnostic, Severity, SourceFile
from qdet.services.normalizer import normalize_problem
from qdet.services.parser import parse_problem

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_DETERMINED = 1
EXIT_ERROR = 2


def _decode_diagnostic(e: UnicodeDecodeError) -> ParseDiagnostic:
    before = e.object[: e.start]
    line = before.count(b"\n") + 1
    column = e.start - (before.rfind(b"\n") + 1) + 1
    return ParseDiagnostic(Severity.ERROR, "invalid UTF-8", line, column)


def read_problem(path: Path) -> Problem:
    try:
        src = SourceFile.read(path)
    except OSError as e:
        typer.echo(f"error: cannot read {path}: {e.strerror or e}", err=True)
        raise typer.Exit(EXIT_ERROR)
    except UnicodeDecodeError as e:
        typer.echo(_decode_diagnostic(e).render(str(path)), err=True)
        raise typer.Exit(EXIT_ERROR)
    try:
        return parse_problem(src)
    except ParseError as e:
        for diagnostic in e.diagnostics:
            typer.echo(diagnostic.render(src.path), err=True)
        raise typer.Exit(EXIT_ERROR)


def load_problem(path: Path) -> NormalizedProblem:
    return normalize_problem(read_problem(path))


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Any QdetError or invalid option combination ends the command with exit code 2."""
    try:
        yield
    except QdetError as e:
        logger.debug(f"Command failed with {e.code.value}")
        typer.echo(f"error: {e.code.value}: {e.detail}", err=True)
        raise typer.Exit(EXIT_ERROR)
    except ValidationError as e:
        for err in e.errors():
            typer.echo(f"error: {err['msg']}", err=True)
        raise typer.Exit(EXIT_ERROR)
