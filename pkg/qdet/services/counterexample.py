"""Turns a model of the negated condition for relation k into instances I, I'.

    I(R_i)  = {t_i}                                    for i != k
    I(R_k)  = { t'_kj : theta_kj(t_k), 1 <= j <= n_k }
    I'(R_k) = I(R_k) | {t_k},  I'(R_i) = I(R_i) otherwise

Every constructed pair is re-checked with the evaluator before it is
returned; a failed check is an implementation bug, never a user error.
"""

import logging
from dataclasses import dataclass

from qdet.errors import VerificationError
from qdet.models.formula import TupleVar
from qdet.models.predicate import Var, constants, eval_predicate
from qdet.models.problem import NormalizedProblem
from qdet.models.sat import SatResult
from qdet.models.schema import ColumnRef, Sort, Value
from qdet.models.tuples import Instance, Tuple, TupleSeq, sub_tuple
from qdet.services.evaluator import eval_query, views_equal
from qdet.services.formula_builder import base_tuple_vars, witness_tuple_var
from qdet.services.solver.fresh import FreshValues

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Counterexample:
    k: int
    relation: str
    instance_i: Instance
    instance_i_prime: Instance
    witness_row: Tuple
    model: dict[Var, Value]


def problem_constants(problem: NormalizedProblem) -> set[Value]:
    found = set(constants(problem.query.predicate))
    for view in problem.views:
        found |= constants(view.predicate)
    return found


def canonicalize(model: dict[Var, Value], order: list[Var], reserved: set[Value]) -> dict[Var, Value]:
    """Rename non-literal uninterpreted values to #0, #1, ... by first occurrence."""
    fresh = FreshValues(reserved)
    renamed: dict[Value, Value] = {}
    result: dict[Var, Value] = {}
    for var in order:
        value = model[var]
        if value.sort == Sort.UNINTERPRETED and value not in reserved:
            if value not in renamed:
                renamed[value] = fresh.next(Sort.UNINTERPRETED)
            value = renamed[value]
        result[var] = value
    return result


def ground(tv: TupleVar, model: dict[Var, Value]) -> Tuple:
    return Tuple.of({ColumnRef(tv.relation_name, c): model[v] for c, v in tv.columns})


def construct(problem: NormalizedProblem, k: int, model: SatResult) -> Counterexample:
    if not model.is_sat:
        raise ValueError("a counterexample needs a satisfying model")
    schema = problem.schema
    base = base_tuple_vars(schema)
    witnesses = [witness_tuple_var(schema, k, j) for j in range(1, problem.n(k) + 1)]
    order = [v for tv in (*base, *witnesses) for v in tv.variables]
    values = canonicalize(model.model, order, problem_constants(problem))

    t = [ground(tv, values) for tv in base]
    t_k = t[k - 1]
    rel_k = schema.relation_at(k)
    admitted = [
        ground(witness, values)
        for witness, view in zip(witnesses, problem.views_for(k))
        if eval_predicate(view.predicate, t_k.as_dict())
    ]

    contents = {rel.name: [t[i - 1]] for i, rel in enumerate(schema.relations, start=1) if i != k}
    instance_i = Instance.build(schema, {**contents, rel_k.name: admitted})
    instance_i_prime = Instance.build(schema, {**contents, rel_k.name: [*admitted, t_k]})
    witness_row = sub_tuple(TupleSeq(tuple(t)).joined(), problem.query.projection)

    cx = Counterexample(
        k=k,
        relation=rel_k.name,
        instance_i=instance_i,
        instance_i_prime=instance_i_prime,
        witness_row=witness_row,
        model=values,
    )
    verify(problem, cx)
    logger.info(
        f"Built counterexample for relation {rel_k.name}: "
        f"{instance_i.total_tuples()} and {instance_i_prime.total_tuples()} tuple(s)"
    )
    return cx


def verify(problem: NormalizedProblem, cx: Counterexample) -> None:
    """Re-establish the three counterexample invariants with the evaluator."""
    schema = problem.schema
    if not views_equal(problem.views, cx.instance_i, cx.instance_i_prime):
        _fail("views agree", "the two instances give different view outputs")
    if cx.witness_row not in eval_query(problem.query, cx.instance_i_prime):
        _fail("witness in Q(I')", f"{cx.witness_row} is not produced on I'")
    if cx.witness_row in eval_query(problem.query, cx.instance_i):
        _fail("witness not in Q(I)", f"{cx.witness_row} is also produced on I")

    n_k = problem.n(cx.k)
    rel_k = schema.relation_at(cx.k)
    if len(cx.instance_i.get(rel_k.name)) > n_k or len(cx.instance_i_prime.get(rel_k.name)) > n_k + 1:
        _fail("size bound", f"relation {rel_k.name} exceeds its bound of {n_k} / {n_k + 1} tuples")
    for rel in schema.relations:
        if rel.name == rel_k.name:
            continue
        if len(cx.instance_i.get(rel.name)) != 1 or len(cx.instance_i_prime.get(rel.name)) != 1:
            _fail("size bound", f"relation {rel.name} must hold exactly one tuple")
    if cx.instance_i_prime.total_tuples() > (schema.m - 1) + n_k + 1:
        _fail("size bound", "more tuples than (m - 1) + n_k + 1")


def _fail(invariant: str, detail: str) -> None:
    logger.error(f"Counterexample verification failed ({invariant}): {detail}")
    raise VerificationError(invariant, detail)
