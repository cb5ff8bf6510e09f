import logging
from pathlib import Path
from typing import Annotated, Optional

import typer

from qdet.commands.common import EXIT_NOT_DETERMINED, EXIT_OK, exit_on_error, load_problem
from qdet.models.tuples import Instance
from qdet.schemas.instance import value_to_json
from qdet.schemas.solver import Backend, SolverConfig
from qdet.schemas.verdict import VerdictResponse
from qdet.services.checker import Verdict, VerdictStatus, check

logger = logging.getLogger(__name__)


def format_instance(inst: Instance, label: str) -> list[str]:
    lines = [f"{label}:"]
    for name, rows in inst.relations.items():
        if not rows:
            lines.append(f"  {name}: (empty)")
            continue
        ordered = sorted(rows, key=lambda t: tuple(v.sort_key() for _, v in t.items))
        columns = [ref.column for ref in ordered[0].columns]
        cells = [[str(v) for _, v in t.items] for t in ordered]
        widths = [max(len(c), *(len(row[k]) for row in cells)) for k, c in enumerate(columns)]
        lines.append(f"  {name}:")
        lines.append("    " + " | ".join(c.ljust(w) for c, w in zip(columns, widths)))
        lines.append("    " + "-+-".join("-" * w for w in widths))
        for row in cells:
            lines.append("    " + " | ".join(v.ljust(w) for v, w in zip(row, widths)))
    return lines


def format_verdict(verdict: Verdict) -> str:
    lines = [
        f"relation {r.index} ({r.relation}): {r.status.value} in {r.seconds:.3f}s [{r.backend.value}]"
        for r in verdict.per_relation_results
    ]
    if verdict.status == VerdictStatus.DETERMINED:
        lines.append("DETERMINED: the views determine the query")
        return "\n".join(lines)

    cx = verdict.counterexample
    lines.append(f"NOT_DETERMINED: condition fails for relation {cx.k} ({cx.relation})")
    lines.extend(format_instance(cx.instance_i, "I"))
    lines.extend(format_instance(cx.instance_i_prime, "I'"))
    witness = ", ".join(f"{ref}={value_to_json(v)}" for ref, v in cx.witness_row.items)
    lines.append(f"row in Q(I') but not in Q(I): ({witness})")
    return "\n".join(lines)


def run(
    file: Annotated[Path, typer.Argument(help="Problem file (.qdet)")],
    json_output: Annotated[bool, typer.Option("--json", help="Print the verdict as JSON")] = False,
    all_relations: Annotated[bool, typer.Option("--all", help="Solve every relation, not just up to the first failure")] = False,
    backend: Annotated[Optional[Backend], typer.Option(help="Solver backend")] = None,
    solver_cmd: Annotated[Optional[str], typer.Option(help="External SMT-LIB2 solver command")] = None,
    time_limit: Annotated[Optional[float], typer.Option(help="Per-relation solver time limit in seconds")] = None,
):
    """Decide whether the views determine the query."""
    with exit_on_error():
        problem = load_problem(file)
        cfg = SolverConfig.from_settings(backend=backend, external_command=solver_cmd, time_limit=time_limit)
        verdict = check(problem, cfg, all_relations=all_relations)

    if json_output:
        typer.echo(VerdictResponse.from_verdict(verdict).model_dump_json(indent=2))
    else:
        typer.echo(format_verdict(verdict))
    logger.info(f"{file}: {verdict.status.value}")
    raise typer.Exit(EXIT_OK if verdict.status == VerdictStatus.DETERMINED else EXIT_NOT_DETERMINED)
