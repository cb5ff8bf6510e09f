from qdet.schemas.instance import InstanceResponse
from qdet.schemas.oracle import OracleBounds, OracleResponse, OracleStatus
from qdet.schemas.solver import Backend, SolverConfig

__all__ = [
    "Backend",
    "InstanceResponse",
    "OracleBounds",
    "OracleResponse",
    "OracleStatus",
    "SolverConfig",
]
