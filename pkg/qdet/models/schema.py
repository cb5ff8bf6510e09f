from dataclasses import dataclass
from enum import Enum

from qdet.errors import ErrorCode, QdetError


def quote_string(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace("\"", "\\\"")
    return f"\"{escaped}\""


class Sort(str, Enum):
    UNINTERPRETED = "uninterpreted"
    INT = "int"
    BOOL = "bool"
    STRING = "string"


@dataclass(frozen=True, slots=True)
class Value:
    """A sort-tagged constant. UNINTERPRETED values are numbered (#0, #1, ...)."""

    sort: Sort
    value: int | bool | str

    def __post_init__(self):
        expected = {
            Sort.UNINTERPRETED: int,
            Sort.INT: int,
            Sort.BOOL: bool,
            Sort.STRING: str,
        }[self.sort]
        # bool is a subclass of int; keep the two apart
        if type(self.value) is not expected:
            raise QdetError(
                ErrorCode.SORT_MISMATCH,
                f"value {self.value!r} is not a valid {self.sort.value} constant",
            )

    def __str__(self) -> str:
        if self.sort == Sort.UNINTERPRETED:
            return f"#{self.value}"
        if self.sort == Sort.STRING:
            return quote_string(self.value)
        if self.sort == Sort.BOOL:
            return "true" if self.value else "false"
        return str(self.value)

    def sort_key(self) -> tuple:
        return (self.sort.value, self.value)


def fresh(n: int) -> Value:
    return Value(Sort.UNINTERPRETED, n)


@dataclass(frozen=True, slots=True, order=True)
class ColumnRef:
    relation: str
    column: str

    def __str__(self) -> str:
        return f"{self.relation}.{self.column}"


@dataclass(frozen=True, slots=True)
class RelationDecl:
    name: str
    columns: tuple[tuple[str, Sort], ...]

    def __post_init__(self):
        if not self.columns:
            raise QdetError(ErrorCode.INVALID_DEFINITION, f"relation {self.name} has no columns")
        names = [c for c, _ in self.columns]
        if len(set(names)) != len(names):
            raise QdetError(ErrorCode.INVALID_DEFINITION, f"relation {self.name} has duplicate column names")

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.columns)

    @property
    def refs(self) -> tuple[ColumnRef, ...]:
        return tuple(ColumnRef(self.name, c) for c, _ in self.columns)

    def has_column(self, column: str) -> bool:
        return any(c == column for c, _ in self.columns)

    def sort_of(self, column: str) -> Sort:
        for c, sort in self.columns:
            if c == column:
                return sort
        raise QdetError(ErrorCode.UNKNOWN_COLUMN, f"relation {self.name} has no column {column}")


@dataclass(frozen=True, slots=True)
class Schema:
    relations: tuple[RelationDecl, ...]

    def __post_init__(self):
        if not self.relations:
            raise QdetError(ErrorCode.INVALID_DEFINITION, "schema must declare at least one relation")
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise QdetError(ErrorCode.INVALID_DEFINITION, "relation names must be unique")

    @property
    def m(self) -> int:
        return len(self.relations)

    def index_of(self, name: str) -> int:
        """1-based index of a relation."""
        for i, rel in enumerate(self.relations, start=1):
            if rel.name == name:
                return i
        raise QdetError(ErrorCode.INVALID_DEFINITION, f"unknown relation {name}")

    def relation(self, name: str) -> RelationDecl:
        return self.relations[self.index_of(name) - 1]

    def relation_at(self, i: int) -> RelationDecl:
        if not 1 <= i <= self.m:
            raise QdetError(ErrorCode.INDEX_OUT_OF_RANGE, f"relation index {i} outside 1..{self.m}")
        return self.relations[i - 1]

    def has_relation(self, name: str) -> bool:
        return any(r.name == name for r in self.relations)

    def sort_of(self, ref: ColumnRef) -> Sort:
        if not self.has_relation(ref.relation):
            raise QdetError(ErrorCode.UNKNOWN_COLUMN, f"unknown relation in column reference {ref}")
        return self.relation(ref.relation).sort_of(ref.column)
