from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceFile:
    text: str
    path: Optional[str] = None

    @classmethod
    def read(cls, path: str | Path) -> "SourceFile":
        return cls(Path(path).read_text(encoding="utf-8"), str(path))


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: Severity
    message: str
    line: int
    column: int

    def render(self, path: Optional[str] = None) -> str:
        return f"{path or '<input>'}:{self.line}:{self.column}: {self.severity.value}: {self.message}"
