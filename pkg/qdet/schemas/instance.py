from pydantic import BaseModel

from qdet.models.schema import Sort, Value
from qdet.models.tuples import Instance, Tuple

JsonValue = int | bool | str


def value_to_json(value: Value) -> JsonValue:
    if value.sort == Sort.UNINTERPRETED:
        return f"#{value.value}"
    return value.value


def row_to_json(t: Tuple, qualified: bool = False) -> dict[str, JsonValue]:
    return {(str(ref) if qualified else ref.column): value_to_json(v) for ref, v in t.items}


def _row_key(t: Tuple) -> tuple:
    return tuple(v.sort_key() for _, v in t.items)


class InstanceResponse(BaseModel):
    """Relation name -> rows; rows use unqualified column names."""

    relations: dict[str, list[dict[str, JsonValue]]]

    @classmethod
    def from_instance(cls, inst: Instance) -> "InstanceResponse":
        return cls(
            relations={
                name: [row_to_json(t) for t in sorted(rows, key=_row_key)]
                for name, rows in inst.relations.items()
            }
        )
