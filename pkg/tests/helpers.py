"""Sample problems and reference procedures shared by the test modules."""

from collections.abc import Iterator

from qdet.models.formula import Formula
from qdet.models.predicate import Var, constants, eval_predicate
from qdet.models.problem import NormalizedProblem
from qdet.models.schema import Sort, Value
from qdet.models.source import SourceFile
from qdet.services.normalizer import normalize_problem
from qdet.services.parser import parse_problem

PROJECTION_MISMATCH = """\
relation R(A: uninterpreted, B: uninterpreted);
view V = project R.A where true from R;
query project R.B where true from R;
"""

IDENTITY = """\
relation R(A: uninterpreted, B: uninterpreted);
view V = project R.A, R.B where true from R;
query project R.A where R.A = R.B from R;
"""

SELECTED = """\
relation R(A: uninterpreted, B: uninterpreted);
view V = project A where B = #0 from R;
query project R.A where R.B = #0 from R;
"""

NO_VIEWS = """\
relation R(A: uninterpreted);
query project R.A where true from R;
"""

NO_VIEWS_FALSE = """\
relation R(A: uninterpreted);
query project R.A where false from R;
"""

JOIN_DETERMINED = """\
relation R1(A: uninterpreted, B: uninterpreted);
relation R2(C: uninterpreted);
view V1 = project R1.A, R1.B where true from R1;
view V2 = project R2.C where true from R2;
query project R1.A where R1.B = R2.C from R1, R2;
"""

JOIN_HIDDEN_COLUMN = """\
relation R1(A: uninterpreted, B: uninterpreted);
relation R2(C: uninterpreted);
view V1 = project R1.A where true from R1;
view V2 = project R2.C where true from R2;
query project R1.A where R1.B = R2.C from R1, R2;
"""

MIXED_SORTS = """\
-- an int column and a bool column
relation Emp(id: uninterpreted, age: int, active: bool);
view Ages = project id, age where active = true from Emp;
query project Emp.id where Emp.age >= 18 and Emp.active = true from Emp;
"""


def load(text: str) -> NormalizedProblem:
    return normalize_problem(parse_problem(SourceFile(text)))


def restricted_growth(variables: list[Var], literals: list[Value]) -> Iterator[dict[Var, Value]]:
    """Every assignment of uninterpreted variables up to renaming of non-literal values."""
    fresh_start = max((v.value for v in literals), default=-1) + 1

    def extend(k: int, assignment: dict[Var, Value], used: int) -> Iterator[dict[Var, Value]]:
        if k == len(variables):
            yield dict(assignment)
            return
        var = variables[k]
        for value in [*literals, *(Value(Sort.UNINTERPRETED, fresh_start + n) for n in range(used + 1))]:
            assignment[var] = value
            grows = value.value == fresh_start + used
            yield from extend(k + 1, assignment, used + 1 if grows else used)
        del assignment[var]

    yield from extend(0, {}, 0)


def brute_force_sat(f: Formula) -> bool:
    assert all(v.sort == Sort.UNINTERPRETED for v in f.variables)
    literals = sorted((v for v in constants(f.body) if v.sort == Sort.UNINTERPRETED), key=Value.sort_key)
    return any(eval_predicate(f.body, a) for a in restricted_growth(list(f.variables), literals))
