import logging

from qdet.models.predicate import nnf
from qdet.models.problem import NormalizedProblem, Problem, QueryDef, ViewDef
from qdet.models.schema import ColumnRef, Schema

logger = logging.getLogger(__name__)


def _dedup(refs: tuple[ColumnRef, ...]) -> tuple[ColumnRef, ...]:
    return tuple(dict.fromkeys(refs))


def normalize(schema: Schema, views: tuple[ViewDef, ...] | list[ViewDef], query: QueryDef) -> NormalizedProblem:
    """Group views by source relation and canonicalize predicates.

    Views keep their input order within each V_i; the query's from list is
    put in schema order so position i of a tuple sequence is R_i.
    """
    groups: list[list[ViewDef]] = [[] for _ in schema.relations]
    for view in views:
        view.validate(schema)
        groups[view.source - 1].append(
            ViewDef(
                name=view.name,
                source=view.source,
                relation=view.relation,
                projection=_dedup(view.projection),
                predicate=nnf(view.predicate),
            )
        )

    query.validate(schema)
    normalized_query = QueryDef(
        projection=_dedup(query.projection),
        predicate=nnf(query.predicate),
        relations=tuple(r.name for r in schema.relations),
    )

    sizes = ", ".join(f"n_{i}={len(g)}" for i, g in enumerate(groups, start=1))
    logger.debug(f"Normalized problem with m={schema.m}: {sizes}")
    return NormalizedProblem(
        schema=schema,
        views_by_relation=tuple(tuple(g) for g in groups),
        query=normalized_query,
    )


def normalize_problem(problem: Problem) -> NormalizedProblem:
    return normalize(problem.schema, problem.views, problem.query)
