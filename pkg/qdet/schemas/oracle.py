from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from qdet.schemas.instance import InstanceResponse


class OracleBounds(BaseModel):
    domain_size: int = Field(..., ge=1)
    max_tuples: int = Field(..., ge=0)


class OracleStatus(str, Enum):
    DETERMINED_UP_TO_BOUNDS = "DETERMINED_UP_TO_BOUNDS"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


class OracleResponse(BaseModel):
    status: OracleStatus
    domain_size: int
    max_tuples: int
    instances_checked: int
    instance: Optional[InstanceResponse] = None
    instance_prime: Optional[InstanceResponse] = None

    @model_validator(mode="after")
    def validate_pair(self) -> "OracleResponse":
        has_pair = self.instance is not None and self.instance_prime is not None
        if has_pair != (self.status == OracleStatus.COUNTEREXAMPLE):
            raise ValueError("a counterexample status needs both instances, and only then")
        return self
