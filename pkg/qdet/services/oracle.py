"""Bounded brute-force check of the determinacy definition itself.

Every instance whose relations hold at most `max_tuples` tuples over a small
value domain is enumerated once. Instances are grouped by their view image;
the views determine the query up to the bounds iff every group agrees on
the query answer. This never consults the formula-based checker.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations, product
from math import comb, prod
from typing import Optional

from qdet.errors import BudgetExceededError, VerificationError
from qdet.models.problem import NormalizedProblem
from qdet.models.schema import ColumnRef, RelationDecl, Sort, Value
from qdet.models.tuples import Instance, Tuple
from qdet.schemas.oracle import OracleBounds
from qdet.services.counterexample import problem_constants
from qdet.services.evaluator import eval_query, eval_view, views_equal
from qdet.services.solver.fresh import FreshValues

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleResult:
    bounds: OracleBounds
    instances_checked: int
    instance: Optional[Instance] = None
    instance_prime: Optional[Instance] = None

    @property
    def determined(self) -> bool:
        return self.instance is None


def value_domain(problem: NormalizedProblem, sort: Sort, size: int) -> list[Value]:
    """Literals of the sort used in the problem, padded with fresh values up to `size`."""
    if sort == Sort.BOOL:
        return [Value(Sort.BOOL, False), Value(Sort.BOOL, True)]
    domain = sorted((v for v in problem_constants(problem) if v.sort == sort), key=Value.sort_key)
    fresh = FreshValues(domain)
    while len(domain) < size:
        domain.append(fresh.next(sort))
    return domain


def relation_tuples(problem: NormalizedProblem, rel: RelationDecl, size: int) -> list[Tuple]:
    domains = [value_domain(problem, sort, size) for _, sort in rel.columns]
    return [
        Tuple.of({ColumnRef(rel.name, c): v for (c, _), v in zip(rel.columns, values)})
        for values in product(*domains)
    ]


def count_instances(problem: NormalizedProblem, bounds: OracleBounds) -> int:
    counts = []
    for rel in problem.schema.relations:
        n = len(relation_tuples(problem, rel, bounds.domain_size))
        counts.append(sum(comb(n, k) for k in range(min(n, bounds.max_tuples) + 1)))
    return prod(counts)


def _tuple_sets(tuples: list[Tuple], max_tuples: int) -> list[frozenset[Tuple]]:
    return [
        frozenset(chosen)
        for k in range(min(len(tuples), max_tuples) + 1)
        for chosen in combinations(tuples, k)
    ]


def iter_instances(problem: NormalizedProblem, bounds: OracleBounds) -> Iterator[Instance]:
    schema = problem.schema
    per_relation = [
        _tuple_sets(relation_tuples(problem, rel, bounds.domain_size), bounds.max_tuples)
        for rel in schema.relations
    ]
    for choice in product(*per_relation):
        yield Instance({rel.name: rows for rel, rows in zip(schema.relations, choice)})


def oracle_check(problem: NormalizedProblem, bounds: OracleBounds, budget: int) -> OracleResult:
    work = count_instances(problem, bounds)
    if work > budget:
        raise BudgetExceededError(
            f"bounds (domain size {bounds.domain_size}, max tuples {bounds.max_tuples}) "
            f"give {work} candidate instances, above the budget of {budget}; "
            f"lower --domain-size or --max-tuples, or raise QDET_ORACLE_WORK_BUDGET"
        )
    logger.info(f"Oracle enumerating {work} instance(s)")

    views = problem.views
    seen: dict[tuple, tuple[Instance, object]] = {}
    checked = 0
    for inst in iter_instances(problem, bounds):
        checked += 1
        image = tuple(eval_view(v, inst) for v in views)
        answer = eval_query(problem.query, inst)
        first = seen.setdefault(image, (inst, answer))
        if first[1] != answer:
            result = OracleResult(bounds, checked, first[0], inst)
            _self_check(problem, result)
            logger.info(f"Oracle found a violating pair after {checked} instance(s)")
            return result

    logger.info(f"No violation among {checked} instance(s)")
    return OracleResult(bounds, checked)


def _self_check(problem: NormalizedProblem, result: OracleResult) -> None:
    if not views_equal(problem.views, result.instance, result.instance_prime):
        raise VerificationError("views agree", "oracle pair has different view outputs")
    if eval_query(problem.query, result.instance) == eval_query(problem.query, result.instance_prime):
        raise VerificationError("query differs", "oracle pair has equal query outputs")
