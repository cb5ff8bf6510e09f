from pathlib import Path
from typing import Annotated

import typer

from qdet.commands.common import exit_on_error, read_problem
from qdet.services.printer import format_problem


def run(file: Annotated[Path, typer.Argument(help="Problem file (.qdet)")]):
    """Print a problem in canonical form."""
    with exit_on_error():
        text = format_problem(read_problem(file))
    typer.echo(text, nl=not text.endswith("\n"))
