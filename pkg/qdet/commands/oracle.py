from pathlib import Path
from typing import Annotated, Optional

import typer

from qdet.commands.common import exit_on_error, load_problem
from qdet.config import settings
from qdet.schemas.instance import InstanceResponse
from qdet.schemas.oracle import OracleBounds, OracleResponse, OracleStatus
from qdet.services.oracle import oracle_check


def run(
    file: Annotated[Path, typer.Argument(help="Problem file (.qdet)")],
    domain_size: Annotated[int, typer.Option(help="Distinct values per sort")],
    max_tuples: Annotated[int, typer.Option(help="Largest tuple set per relation")],
    budget: Annotated[Optional[int], typer.Option(help="Largest number of candidate instances")] = None,
):
    """Brute-force the determinacy definition over small instances."""
    with exit_on_error():
        problem = load_problem(file)
        bounds = OracleBounds(domain_size=domain_size, max_tuples=max_tuples)
        result = oracle_check(problem, bounds, budget if budget is not None else settings.oracle_work_budget)

    response = OracleResponse(
        status=OracleStatus.DETERMINED_UP_TO_BOUNDS if result.determined else OracleStatus.COUNTEREXAMPLE,
        domain_size=bounds.domain_size,
        max_tuples=bounds.max_tuples,
        instances_checked=result.instances_checked,
        instance=None if result.determined else InstanceResponse.from_instance(result.instance),
        instance_prime=None if result.determined else InstanceResponse.from_instance(result.instance_prime),
    )
    typer.echo(response.model_dump_json(indent=2))
