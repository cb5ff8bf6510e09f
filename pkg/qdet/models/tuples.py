"""Tuples, tuple sequences and database instances."""

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from qdet.errors import ErrorCode, QdetError
from qdet.models.schema import ColumnRef, RelationDecl, Schema, Value


@dataclass(frozen=True, slots=True)
class Tuple:
    """A mapping from relation-qualified column names to values.

    Items are kept sorted so equal mappings compare and hash equal.
    """

    items: tuple[tuple[ColumnRef, Value], ...]

    @classmethod
    def of(cls, mapping: Mapping[ColumnRef, Value]) -> "Tuple":
        return cls(tuple(sorted(mapping.items())))

    @property
    def columns(self) -> tuple[ColumnRef, ...]:
        return tuple(c for c, _ in self.items)

    def __getitem__(self, ref: ColumnRef) -> Value:
        for c, v in self.items:
            if c == ref:
                return v
        raise QdetError(ErrorCode.UNKNOWN_COLUMN, f"tuple has no column {ref}")

    def __contains__(self, ref: ColumnRef) -> bool:
        return any(c == ref for c, _ in self.items)

    def as_dict(self) -> dict[ColumnRef, Value]:
        return dict(self.items)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{c}={v}" for c, v in self.items) + ")"


def sub_tuple(t: Tuple, U: Iterable[ColumnRef]) -> Tuple:
    """t[U]: keep exactly the columns of U."""
    values = t.as_dict()
    picked = {}
    for ref in U:
        if ref not in values:
            raise QdetError(ErrorCode.UNKNOWN_COLUMN, f"tuple has no column {ref}")
        picked[ref] = values[ref]
    return Tuple.of(picked)


def conforms(t: Tuple, rel: RelationDecl) -> bool:
    if len(t.items) != len(rel.columns):
        return False
    values = t.as_dict()
    for column, sort in rel.columns:
        value = values.get(ColumnRef(rel.name, column))
        if value is None or value.sort != sort:
            return False
    return True


@dataclass(frozen=True, slots=True)
class TupleSeq:
    """An ordered sequence of tuples, indexed from 1."""

    tuples: tuple[Tuple, ...]

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self) -> Iterator[Tuple]:
        return iter(self.tuples)

    def at(self, i: int) -> Tuple:
        if not 1 <= i <= len(self.tuples):
            raise QdetError(ErrorCode.INDEX_OUT_OF_RANGE, f"position {i} outside 1..{len(self.tuples)}")
        return self.tuples[i - 1]

    def sub(self, start: int, stop: int) -> "TupleSeq":
        """t_{start..stop}, inclusive; empty when start > stop."""
        if start > stop:
            return TupleSeq(())
        self.at(start)
        self.at(stop)
        return TupleSeq(self.tuples[start - 1 : stop])

    def concat(self, other: "TupleSeq") -> "TupleSeq":
        return TupleSeq(self.tuples + other.tuples)

    def joined(self) -> Tuple:
        """All positions merged into one tuple over relation-qualified columns."""
        merged: dict[ColumnRef, Value] = {}
        for t in self.tuples:
            merged.update(t.items)
        return Tuple.of(merged)

    def binding(self) -> dict[ColumnRef, Value]:
        merged: dict[ColumnRef, Value] = {}
        for t in self.tuples:
            merged.update(t.items)
        return merged


def seq_except(ts: TupleSeq, i: int, s: Tuple) -> TupleSeq:
    """ts EXCEPT i -> s."""
    current = ts.at(i)
    if current.columns != s.columns or any(
        a.sort != b.sort for (_, a), (_, b) in zip(current.items, s.items)
    ):
        raise QdetError(ErrorCode.SORT_MISMATCH, f"replacement {s} does not conform to position {i}")
    replaced = list(ts.tuples)
    replaced[i - 1] = s
    return TupleSeq(tuple(replaced))


@dataclass(frozen=True)
class Instance:
    """A mapping from relation names to finite sets of tuples."""

    relations: Mapping[str, frozenset[Tuple]] = field(default_factory=dict)

    @classmethod
    def build(cls, schema: Schema, contents: Mapping[str, Iterable[Tuple]]) -> "Instance":
        relations = {}
        for rel in schema.relations:
            tuples = frozenset(contents.get(rel.name, ()))
            for t in tuples:
                if not conforms(t, rel):
                    raise QdetError(ErrorCode.SORT_MISMATCH, f"tuple {t} does not conform to {rel.name}")
            relations[rel.name] = tuples
        unknown = set(contents) - set(relations)
        if unknown:
            raise QdetError(ErrorCode.INVALID_DEFINITION, f"unknown relations {sorted(unknown)}")
        return cls(relations)

    def get(self, name: str) -> frozenset[Tuple]:
        return self.relations.get(name, frozenset())

    def total_tuples(self) -> int:
        return sum(len(ts) for ts in self.relations.values())

    def issubset(self, other: "Instance") -> bool:
        return all(ts <= other.get(name) for name, ts in self.relations.items())

    def __hash__(self) -> int:
        return hash(frozenset(self.relations.items()))
