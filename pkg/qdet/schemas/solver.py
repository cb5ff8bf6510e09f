from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qdet.config import settings


class Backend(str, Enum):
    BUILTIN = "builtin"
    EXTERNAL = "external"


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    backend: Backend = Backend.BUILTIN
    external_command: Optional[str] = None
    time_limit: float = Field(default=30.0, gt=0)
    builtin_max_atoms: int = Field(default=30, ge=1)

    @model_validator(mode="after")
    def validate_external_command(self) -> "SolverConfig":
        if self.backend == Backend.EXTERNAL and not self.external_command:
            raise ValueError("the external backend needs a solver command (--solver-cmd or QDET_SOLVER_CMD)")
        return self

    @classmethod
    def from_settings(
        cls,
        backend: Optional[Backend] = None,
        external_command: Optional[str] = None,
        time_limit: Optional[float] = None,
    ) -> "SolverConfig":
        """Flags override settings (environment / .env), which override defaults."""
        return cls(
            backend=backend or settings.solver_backend,
            external_command=external_command or settings.solver_cmd,
            time_limit=time_limit if time_limit is not None else settings.time_limit,
            builtin_max_atoms=settings.builtin_max_atoms,
        )
