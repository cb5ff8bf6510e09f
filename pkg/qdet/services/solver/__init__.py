import logging

from qdet.errors import ErrorCode, SolverError
from qdet.models.formula import Formula
from qdet.models.sat import SatResult
from qdet.schemas.solver import Backend, SolverConfig
from qdet.services.solver.builtin import solve_builtin
from qdet.services.solver.external import solve_external
from qdet.services.solver.smtlib import emit_smtlib, parse_model

logger = logging.getLogger(__name__)


def solve(f: Formula, cfg: SolverConfig) -> SatResult:
    if cfg.backend == Backend.EXTERNAL:
        return solve_external(f, cfg.external_command, cfg.time_limit)
    try:
        return solve_builtin(f, cfg.builtin_max_atoms)
    except SolverError as e:
        if e.code != ErrorCode.UNSUPPORTED_THEORY or not cfg.external_command:
            raise
        logger.warning(f"Builtin backend declined ({e.detail}); delegating to {cfg.external_command}")
        return solve_external(f, cfg.external_command, cfg.time_limit)


__all__ = ["solve", "solve_builtin", "solve_external", "emit_smtlib", "parse_model"]
