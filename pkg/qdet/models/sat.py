from dataclasses import dataclass
from enum import Enum
from typing import Optional

from qdet.models.predicate import Var
from qdet.models.schema import Value


class SatStatus(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass(frozen=True)
class SatResult:
    status: SatStatus
    model: Optional[dict[Var, Value]] = None

    def __post_init__(self):
        if (self.status == SatStatus.SAT) != (self.model is not None):
            raise ValueError("a model is present exactly when the result is SAT")

    @property
    def is_sat(self) -> bool:
        return self.status == SatStatus.SAT


UNSAT = SatResult(SatStatus.UNSAT)
