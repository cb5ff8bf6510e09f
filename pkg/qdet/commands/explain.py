from pathlib import Path
from typing import Annotated

import typer

from qdet.commands.common import exit_on_error, load_problem
from qdet.services.explain import explain_problem


def run(
    file: Annotated[Path, typer.Argument(help="Problem file (.qdet)")],
    latex: Annotated[bool, typer.Option("--latex", help="Render as LaTeX math")] = False,
):
    """Show the per-relation condition and its negation."""
    with exit_on_error():
        text = explain_problem(load_problem(file), latex=latex)
    typer.echo(text, nl=False)
