from dataclasses import dataclass

from qdet.errors import ErrorCode, QdetError
from qdet.models.predicate import Predicate, columns
from qdet.models.schema import ColumnRef, Schema


@dataclass(frozen=True, slots=True)
class ViewDef:
    """pi_U sigma_theta R_i over a single relation."""

    name: str
    source: int
    relation: str
    projection: tuple[ColumnRef, ...]
    predicate: Predicate

    def __post_init__(self):
        if not self.projection:
            raise QdetError(ErrorCode.INVALID_DEFINITION, f"view {self.name} has an empty projection")
        stray = {c for c in (*self.projection, *columns(self.predicate)) if c.relation != self.relation}
        if stray:
            raise QdetError(
                ErrorCode.INVALID_DEFINITION,
                f"view {self.name} must reference a single relation, found {', '.join(sorted(map(str, stray)))}",
            )

    def validate(self, schema: Schema) -> None:
        if schema.index_of(self.relation) != self.source:
            raise QdetError(ErrorCode.INVALID_DEFINITION, f"view {self.name} has inconsistent source index")
        for ref in (*self.projection, *columns(self.predicate)):
            schema.sort_of(ref)


@dataclass(frozen=True, slots=True)
class QueryDef:
    """pi_U sigma_theta (R_1 x ... x R_m) with every relation exactly once."""

    projection: tuple[ColumnRef, ...]
    predicate: Predicate
    relations: tuple[str, ...]

    def __post_init__(self):
        if not self.projection:
            raise QdetError(ErrorCode.INVALID_DEFINITION, "query has an empty projection")
        if len(set(self.relations)) != len(self.relations):
            raise QdetError(ErrorCode.INVALID_DEFINITION, "self join not supported")

    def validate(self, schema: Schema) -> None:
        if sorted(self.relations) != sorted(r.name for r in schema.relations):
            raise QdetError(ErrorCode.INVALID_DEFINITION, "query must range over every declared relation exactly once")
        for ref in (*self.projection, *columns(self.predicate)):
            schema.sort_of(ref)


@dataclass(frozen=True)
class Problem:
    schema: Schema
    views: tuple[ViewDef, ...]
    query: QueryDef


@dataclass(frozen=True)
class NormalizedProblem:
    schema: Schema
    views_by_relation: tuple[tuple[ViewDef, ...], ...]
    query: QueryDef

    @property
    def m(self) -> int:
        return self.schema.m

    def views_for(self, i: int) -> tuple[ViewDef, ...]:
        """V_i, in input order."""
        self.schema.relation_at(i)
        return self.views_by_relation[i - 1]

    def n(self, i: int) -> int:
        return len(self.views_for(i))

    def view(self, i: int, j: int) -> ViewDef:
        views = self.views_for(i)
        if not 1 <= j <= len(views):
            raise QdetError(ErrorCode.INDEX_OUT_OF_RANGE, f"view index {j} outside 1..{len(views)} for relation {i}")
        return views[j - 1]

    @property
    def views(self) -> tuple[ViewDef, ...]:
        return tuple(v for group in self.views_by_relation for v in group)
