from qdet.models.formula import Formula, Role, RoleKind, TupleVar
from qdet.models.predicate import And, Atom, Const, Not, Op, Or, Predicate, Var
from qdet.models.problem import NormalizedProblem, Problem, QueryDef, ViewDef
from qdet.models.sat import SatResult, SatStatus
from qdet.models.schema import ColumnRef, RelationDecl, Schema, Sort, Value
from qdet.models.source import ParseDiagnostic, Severity, SourceFile
from qdet.models.tuples import Instance, Tuple, TupleSeq

__all__ = [
    "And",
    "Atom",
    "ColumnRef",
    "Const",
    "Formula",
    "Instance",
    "NormalizedProblem",
    "Not",
    "Op",
    "Or",
    "ParseDiagnostic",
    "Predicate",
    "Problem",
    "QueryDef",
    "RelationDecl",
    "Role",
    "RoleKind",
    "SatResult",
    "SatStatus",
    "Schema",
    "Severity",
    "Sort",
    "SourceFile",
    "Tuple",
    "TupleSeq",
    "TupleVar",
    "Value",
    "Var",
    "ViewDef",
]
