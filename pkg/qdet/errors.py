"""Error types shared by every stage of the checker."""

from enum import Enum


class ErrorCode(str, Enum):
    UNKNOWN_COLUMN = "UNKNOWN_COLUMN"
    UNBOUND_COLUMN = "UNBOUND_COLUMN"
    INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"
    SORT_MISMATCH = "SORT_MISMATCH"
    INVALID_DEFINITION = "INVALID_DEFINITION"
    PARSE_ERROR = "PARSE_ERROR"
    UNSUPPORTED_THEORY = "UNSUPPORTED_THEORY"
    SOLVER_TIMEOUT = "SOLVER_TIMEOUT"
    EXTERNAL_SOLVER_FAILURE = "EXTERNAL_SOLVER_FAILURE"
    VERIFICATION_FAILED = "VERIFICATION_FAILED"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


class QdetError(Exception):
    """Base error: a machine-readable code plus a human-readable detail."""

    def __init__(self, code: ErrorCode, detail: str):
        self.code = code
        self.detail = detail
        super().__init__(f"{code.value}: {detail}")


class ParseError(QdetError):
    def __init__(self, diagnostics: list):
        self.diagnostics = diagnostics
        errors = [d for d in diagnostics if d.severity == "error"]
        super().__init__(ErrorCode.PARSE_ERROR, f"{len(errors)} error(s) in problem file")


class SolverError(QdetError):
    pass


class VerificationError(QdetError):
    """Raised when a constructed artifact fails its own re-check. Always a bug."""

    def __init__(self, invariant: str, detail: str):
        self.invariant = invariant
        super().__init__(ErrorCode.VERIFICATION_FAILED, f"{invariant}: {detail}")


class BudgetExceededError(QdetError):
    def __init__(self, detail: str):
        super().__init__(ErrorCode.BUDGET_EXCEEDED, detail)
