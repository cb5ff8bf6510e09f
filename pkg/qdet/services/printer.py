"""Canonical text form of a problem; parse(print(p)) == p."""

from qdet.models.predicate import DSL, format_predicate
from qdet.models.problem import Problem, QueryDef, ViewDef
from qdet.models.schema import RelationDecl


def format_relation(rel: RelationDecl) -> str:
    columns = ", ".join(f"{c}: {sort.value}" for c, sort in rel.columns)
    return f"relation {rel.name}({columns});"


def format_view(view: ViewDef) -> str:
    projection = ", ".join(map(str, view.projection))
    predicate = format_predicate(view.predicate, DSL)
    return f"view {view.name} = project {projection} where {predicate} from {view.relation};"


def format_query(query: QueryDef) -> str:
    projection = ", ".join(map(str, query.projection))
    predicate = format_predicate(query.predicate, DSL)
    return f"query project {projection} where {predicate} from {', '.join(query.relations)};"


def format_problem(problem: Problem) -> str:
    lines = [format_relation(r) for r in problem.schema.relations]
    if problem.views:
        lines.append("")
        lines.extend(format_view(v) for v in problem.views)
    lines.append("")
    lines.append(format_query(problem.query))
    return "\n".join(lines) + "\n"
