import logging
import sys
from typing import Annotated

import typer

from qdet.commands import check, emit_smt, explain, fmt, oracle
from qdet.commands.common import EXIT_ERROR
from qdet.config import settings

app = typer.Typer(
    name="qdet",
    help="Decide whether project-select views determine a select-project-join query.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def configure(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log debug output to stderr")] = False,
):
    level = "DEBUG" if verbose else settings.log_level.upper()
    if level not in logging.getLevelNamesMapping():
        typer.echo(f"error: unknown log level {settings.log_level!r} (QDET_LOG_LEVEL)", err=True)
        raise typer.Exit(EXIT_ERROR)
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


app.command("check")(check.run)
app.command("emit-smt")(emit_smt.run)
app.command("oracle")(oracle.run)
app.command("explain")(explain.run)
app.command("fmt")(fmt.run)
