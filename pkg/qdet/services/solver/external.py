"""Delegation to an SMT-LIB2 solver subprocess (z3, cvc5, ...)."""

import logging
import shlex
import subprocess

from qdet.errors import ErrorCode, SolverError
from qdet.models.formula import Formula
from qdet.models.sat import SatResult
from qdet.services.solver.smtlib import emit_smtlib, parse_model

logger = logging.getLogger(__name__)


def run_solver(command: str, script: str, time_limit: float) -> str:
    """Feed a script on stdin and return the solver's stdout."""
    argv = shlex.split(command)
    logger.debug(f"Running {argv[0]} on a {len(script)}-byte script")
    try:
        completed = subprocess.run(
            argv,
            input=script,
            capture_output=True,
            text=True,
            timeout=time_limit,
        )
    except subprocess.TimeoutExpired:
        raise SolverError(ErrorCode.SOLVER_TIMEOUT, f"solver exceeded the {time_limit:g}s time limit") from None
    except OSError as e:
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, f"could not run {argv[0]}: {e}") from None

    first_line = completed.stdout.lstrip().split("\n", 1)[0].strip()
    # an unsat answer makes (get-model) fail, and some solvers then exit nonzero
    if completed.returncode != 0 and first_line != "unsat":
        detail = (completed.stderr or completed.stdout).strip().splitlines()
        raise SolverError(
            ErrorCode.EXTERNAL_SOLVER_FAILURE,
            f"{argv[0]} exited with status {completed.returncode}" + (f": {detail[0]}" if detail else ""),
        )
    return completed.stdout


def solve_external(f: Formula, command: str, time_limit: float) -> SatResult:
    output = run_solver(command, emit_smtlib(f), time_limit)
    return parse_model(output, f)
