from typing import Optional

from pydantic import BaseModel, model_validator

from qdet.models.sat import SatStatus
from qdet.schemas.instance import InstanceResponse, JsonValue, row_to_json
from qdet.schemas.solver import Backend
from qdet.services.checker import Verdict, VerdictStatus
from qdet.services.counterexample import Counterexample


class RelationResultResponse(BaseModel):
    index: int
    relation: str
    status: SatStatus
    seconds: float
    backend: Backend


class CounterexampleResponse(BaseModel):
    k: int
    relation: str
    instance: InstanceResponse
    instance_prime: InstanceResponse
    witness_row: dict[str, JsonValue]

    @classmethod
    def from_counterexample(cls, cx: Counterexample) -> "CounterexampleResponse":
        return cls(
            k=cx.k,
            relation=cx.relation,
            instance=InstanceResponse.from_instance(cx.instance_i),
            instance_prime=InstanceResponse.from_instance(cx.instance_i_prime),
            witness_row=row_to_json(cx.witness_row, qualified=True),
        )


class VerdictResponse(BaseModel):
    status: VerdictStatus
    failing_relation: Optional[int] = None
    counterexample: Optional[CounterexampleResponse] = None
    per_relation_results: list[RelationResultResponse]

    @model_validator(mode="after")
    def validate_counterexample(self) -> "VerdictResponse":
        not_determined = self.status == VerdictStatus.NOT_DETERMINED
        if not_determined != (self.counterexample is not None and self.failing_relation is not None):
            raise ValueError("NOT_DETERMINED requires a counterexample and a failing relation, and only it does")
        return self

    @classmethod
    def from_verdict(cls, verdict: Verdict) -> "VerdictResponse":
        return cls(
            status=verdict.status,
            failing_relation=verdict.failing_relation,
            counterexample=(
                CounterexampleResponse.from_counterexample(verdict.counterexample)
                if verdict.counterexample is not None
                else None
            ),
            per_relation_results=[
                RelationResultResponse(
                    index=r.index,
                    relation=r.relation,
                    status=r.status,
                    seconds=r.seconds,
                    backend=r.backend,
                )
                for r in verdict.per_relation_results
            ],
        )
