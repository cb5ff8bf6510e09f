"""Set-semantics evaluation of views and the query on concrete instances."""

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import product

from qdet.models.predicate import eval_predicate
from qdet.models.problem import QueryDef, ViewDef
from qdet.models.schema import ColumnRef
from qdet.models.tuples import Instance, Tuple, TupleSeq, sub_tuple


@dataclass(frozen=True)
class Relation:
    columns: tuple[ColumnRef, ...]
    rows: frozenset[Tuple]

    def __len__(self) -> int:
        return len(self.rows)

    def __contains__(self, row: Tuple) -> bool:
        return row in self.rows

    def issubset(self, other: "Relation") -> bool:
        return self.rows <= other.rows


def eval_view(v: ViewDef, inst: Instance) -> Relation:
    rows = frozenset(
        sub_tuple(t, v.projection)
        for t in inst.get(v.relation)
        if eval_predicate(v.predicate, t.as_dict())
    )
    return Relation(v.projection, rows)


def matching_sequences(q: QueryDef, inst: Instance) -> Iterable[TupleSeq]:
    """Every t in R_1 x ... x R_m (in the query's relation order) with theta(t)."""
    for combo in product(*(inst.get(name) for name in q.relations)):
        seq = TupleSeq(combo)
        if eval_predicate(q.predicate, seq.binding()):
            yield seq


def eval_query(q: QueryDef, inst: Instance) -> Relation:
    rows = frozenset(sub_tuple(seq.joined(), q.projection) for seq in matching_sequences(q, inst))
    return Relation(q.projection, rows)


def views_equal(views: Iterable[ViewDef], i1: Instance, i2: Instance) -> bool:
    return all(eval_view(v, i1) == eval_view(v, i2) for v in views)
