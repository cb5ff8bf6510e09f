from dataclasses import dataclass
from enum import Enum

from qdet.models.predicate import Predicate, Var, iter_terms
from qdet.models.schema import ColumnRef, RelationDecl


class RoleKind(str, Enum):
    BASE_TUPLE = "base_tuple"
    SKOLEM_WITNESS = "skolem_witness"


@dataclass(frozen=True, slots=True)
class Role:
    kind: RoleKind
    relation: int
    view: int | None = None


@dataclass(frozen=True, slots=True)
class TupleVar:
    """A tuple-valued variable ranging over R_i: one logical variable per column."""

    label: str
    relation: int
    relation_name: str
    columns: tuple[tuple[str, Var], ...]

    @classmethod
    def over(cls, label: str, index: int, rel: RelationDecl) -> "TupleVar":
        return cls(
            label=label,
            relation=index,
            relation_name=rel.name,
            columns=tuple((c, Var(f"{label}.{c}", sort)) for c, sort in rel.columns),
        )

    def var(self, column: str) -> Var:
        for c, v in self.columns:
            if c == column:
                return v
        raise KeyError(column)

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(v for _, v in self.columns)

    def renaming(self) -> dict[ColumnRef, Var]:
        """Column references of R_i mapped onto this tuple variable."""
        return {ColumnRef(self.relation_name, c): v for c, v in self.columns}


@dataclass(frozen=True)
class Formula:
    body: Predicate
    tuple_vars: tuple[TupleVar, ...]
    roles: dict[str, Role]

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(v for tv in self.tuple_vars for v in tv.variables)

    def tuple_var(self, label: str) -> TupleVar:
        for tv in self.tuple_vars:
            if tv.label == label:
                return tv
        raise KeyError(label)

    def atom_variables(self) -> set[Var]:
        return {t for t in iter_terms(self.body) if isinstance(t, Var)}
