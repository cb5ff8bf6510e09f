"""Builds the skolemized negation of the per-relation determinacy condition.

For relation i the condition reads

    forall t: theta(t) => OR_j ( theta_ij(t_i) and forall t': Phi_ij(t_i, t') => Psi_ij(t, t') )

Its negation is existential, so each inner t' becomes a fresh witness
tuple per disjunct j and the result is quantifier-free.
"""

import logging

from qdet.models.formula import Formula, Role, RoleKind, TupleVar
from qdet.models.predicate import Predicate, conj, disj, eq, neg, substitute
from qdet.models.problem import NormalizedProblem
from qdet.models.schema import Schema

logger = logging.getLogger(__name__)


def base_tuple_var(schema: Schema, i: int) -> TupleVar:
    return TupleVar.over(f"t{i}", i, schema.relation_at(i))


def witness_tuple_var(schema: Schema, i: int, j: int) -> TupleVar:
    return TupleVar.over(f"t{i}'{j}", i, schema.relation_at(i))


def base_tuple_vars(schema: Schema) -> tuple[TupleVar, ...]:
    return tuple(base_tuple_var(schema, i) for i in range(1, schema.m + 1))


def instantiate(p: Predicate, tuple_vars: list[TupleVar] | tuple[TupleVar, ...]) -> Predicate:
    """Replace each column reference R_k.c by the variable of the tuple over R_k."""
    mapping = {}
    for tv in tuple_vars:
        mapping.update(tv.renaming())
    return substitute(p, mapping)


def build_phi(problem: NormalizedProblem, i: int, j: int, t: TupleVar, t_prime: TupleVar) -> Predicate:
    """Phi_ij(t, t') = theta_ij(t') and t'[U_ij] = t[U_ij]."""
    view = problem.view(i, j)
    agreement = [eq(t_prime.var(ref.column), t.var(ref.column)) for ref in view.projection]
    return conj(instantiate(view.predicate, [t_prime]), *agreement)


def build_psi(
    problem: NormalizedProblem,
    i: int,
    j: int,
    base: list[TupleVar] | tuple[TupleVar, ...],
    t_prime: TupleVar,
) -> Predicate:
    """Psi_ij(t, t') = theta(s) and s[U] = t[U], where s = t EXCEPT i -> t'."""
    problem.view(i, j)
    s = list(base)
    s[i - 1] = t_prime
    by_name = {tv.relation_name: tv for tv in base}
    s_by_name = {tv.relation_name: tv for tv in s}
    agreement = [
        eq(s_by_name[ref.relation].var(ref.column), by_name[ref.relation].var(ref.column))
        for ref in problem.query.projection
    ]
    return conj(instantiate(problem.query.predicate, s), *agreement)


def build_negated_star(problem: NormalizedProblem, i: int) -> Formula:
    schema = problem.schema
    schema.relation_at(i)
    base = base_tuple_vars(schema)
    t_i = base[i - 1]

    tuple_vars: list[TupleVar] = list(base)
    roles = {tv.label: Role(RoleKind.BASE_TUPLE, tv.relation) for tv in base}
    clauses = []
    for j, view in enumerate(problem.views_for(i), start=1):
        witness = witness_tuple_var(schema, i, j)
        tuple_vars.append(witness)
        roles[witness.label] = Role(RoleKind.SKOLEM_WITNESS, i, j)
        phi = build_phi(problem, i, j, t_i, witness)
        psi = build_psi(problem, i, j, base, witness)
        clauses.append(disj(neg(instantiate(view.predicate, [t_i])), conj(phi, neg(psi))))

    body = conj(instantiate(problem.query.predicate, base), *clauses)
    logger.debug(f"Built negated condition for relation {i} with {problem.n(i)} witness tuple(s)")
    return Formula(body=body, tuple_vars=tuple(tuple_vars), roles=roles)
