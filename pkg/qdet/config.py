from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="QDET_", env_file=".env", extra="ignore")

    # Solver settings
    solver_backend: str = "builtin"
    solver_cmd: Optional[str] = None
    time_limit: float = 30.0
    builtin_max_atoms: int = 30  # Larger formulas go to the external solver

    # Oracle settings
    oracle_work_budget: int = 500_000  # Candidate instances, not pairs

    log_level: str = "WARNING"


settings = Settings()
