import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from qdet.models.problem import NormalizedProblem
from qdet.models.sat import SatResult, SatStatus
from qdet.schemas.solver import Backend, SolverConfig
from qdet.services.counterexample import Counterexample, construct
from qdet.services.formula_builder import build_negated_star
from qdet.services.solver import solve

logger = logging.getLogger(__name__)


class VerdictStatus(str, Enum):
    DETERMINED = "DETERMINED"
    NOT_DETERMINED = "NOT_DETERMINED"


@dataclass(frozen=True)
class RelationResult:
    index: int
    relation: str
    status: SatStatus
    seconds: float
    backend: Backend
    result: SatResult = field(repr=False, compare=False)


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    per_relation_results: tuple[RelationResult, ...]
    failing_relation: Optional[int] = None
    counterexample: Optional[Counterexample] = None


def check_relation(problem: NormalizedProblem, i: int, cfg: SolverConfig) -> RelationResult:
    """Solve the negated condition for relation i."""
    relation = problem.schema.relation_at(i).name
    started = time.perf_counter()
    formula = build_negated_star(problem, i)
    result = solve(formula, cfg)
    seconds = time.perf_counter() - started
    logger.info(f"Relation {i} ({relation}): {result.status.value} in {seconds:.3f}s")
    return RelationResult(i, relation, result.status, seconds, cfg.backend, result)


def check(problem: NormalizedProblem, cfg: SolverConfig, all_relations: bool = False) -> Verdict:
    indices = range(1, problem.m + 1)
    if all_relations:
        with ThreadPoolExecutor(max_workers=problem.m) as pool:
            results = list(pool.map(lambda i: check_relation(problem, i, cfg), indices))
    else:
        results = []
        for i in indices:
            results.append(check_relation(problem, i, cfg))
            if results[-1].status == SatStatus.SAT:
                break

    failing = next((r for r in results if r.status == SatStatus.SAT), None)
    if failing is None:
        return Verdict(VerdictStatus.DETERMINED, tuple(results))
    cx = construct(problem, failing.index, failing.result)
    return Verdict(
        VerdictStatus.NOT_DETERMINED,
        tuple(results),
        failing_relation=failing.index,
        counterexample=cx,
    )
