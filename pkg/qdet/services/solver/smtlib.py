"""SMT-LIB2 emission and model read-back."""

import logging
import re
from typing import Any

from lark import Lark, Transformer
from lark.exceptions import LarkError

from qdet.errors import ErrorCode, SolverError
from qdet.models.formula import Formula
from qdet.models.predicate import And, Atom, Const, Not, Op, Or, Predicate, Term, Var, constants, eval_predicate
from qdet.models.sat import UNSAT, SatResult, SatStatus
from qdet.models.schema import Sort, Value
from qdet.services.solver.fresh import FreshValues

logger = logging.getLogger(__name__)

UNINTERPRETED_SORT = "U"

_SMT_SORTS = {
    Sort.UNINTERPRETED: UNINTERPRETED_SORT,
    Sort.INT: "Int",
    Sort.BOOL: "Bool",
    Sort.STRING: "String",
}

_SMT_OPS = {Op.EQ: "=", Op.LT: "<", Op.LE: "<="}


def _symbol(name: str) -> str:
    return f"|{name}|"


def _value(value: Value) -> str:
    if value.sort == Sort.UNINTERPRETED:
        return _symbol(str(value))
    if value.sort == Sort.BOOL:
        return "true" if value.value else "false"
    if value.sort == Sort.INT:
        return str(value.value) if value.value >= 0 else f"(- {-value.value})"
    escaped = value.value.replace('"', '""')
    return f'"{escaped}"'


def _term(term: Term) -> str:
    if isinstance(term, Value):
        return _value(term)
    if isinstance(term, Var):
        return _symbol(term.name)
    raise ValueError(f"column reference {term} cannot appear in a solver formula")


def to_sexpr(p: Predicate) -> str:
    if isinstance(p, Const):
        return "true" if p.value else "false"
    if isinstance(p, Atom):
        return f"({_SMT_OPS[p.op]} {_term(p.left)} {_term(p.right)})"
    if isinstance(p, Not):
        return f"(not {to_sexpr(p.arg)})"
    if isinstance(p, (And, Or)):
        if not p.args:
            return "true" if isinstance(p, And) else "false"
        keyword = "and" if isinstance(p, And) else "or"
        return f"({keyword} {' '.join(to_sexpr(a) for a in p.args)})"
    raise TypeError(f"not a predicate: {p!r}")


def _literals(f: Formula) -> list[Value]:
    return sorted(
        (v for v in constants(f.body) if v.sort == Sort.UNINTERPRETED),
        key=lambda v: v.value,
    )


def emit_smtlib(f: Formula) -> str:
    lines = ["(set-option :produce-models true)", "(set-logic ALL)"]
    literals = _literals(f)
    if literals or any(v.sort == Sort.UNINTERPRETED for v in f.variables):
        lines.append(f"(declare-sort {UNINTERPRETED_SORT} 0)")
    for var in f.variables:
        lines.append(f"(declare-const {_symbol(var.name)} {_SMT_SORTS[var.sort]})")
    for literal in literals:
        lines.append(f"(declare-const {_value(literal)} {UNINTERPRETED_SORT})")
    if len(literals) > 1:
        lines.append(f"(assert (distinct {' '.join(_value(v) for v in literals)}))")
    lines.append(f"(assert {to_sexpr(f.body)})")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    return "\n".join(lines) + "\n"


# Reading solver output

_SEXP_GRAMMAR = r"""
start: _sexp*
_sexp: list | STRING | QSYMBOL | SYMBOL
list: "(" _sexp* ")"

STRING: /"([^"]|"")*"/
QSYMBOL: /\|[^|]*\|/
SYMBOL: /[^\s()|";]+/
COMMENT: /;[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


class SmtString(str):
    """A string literal, as opposed to a symbol."""


class _ToPython(Transformer):
    def start(self, items):
        return list(items)

    def list(self, items):
        return list(items)

    def STRING(self, token):
        text = str(token)[1:-1].replace('""', '"')
        text = re.sub(r"\\u\{([0-9a-fA-F]+)\}", lambda m: chr(int(m.group(1), 16)), text)
        text = re.sub(r"\\u([0-9a-fA-F]{4})", lambda m: chr(int(m.group(1), 16)), text)
        return SmtString(text)

    def QSYMBOL(self, token):
        return str(token)[1:-1]

    def SYMBOL(self, token):
        return str(token)


_sexp_parser = Lark(_SEXP_GRAMMAR, parser="lalr", transformer=_ToPython())


def parse_sexprs(text: str) -> list[Any]:
    try:
        return _sexp_parser.parse(text)
    except LarkError as err:
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, f"unparseable solver output: {err}") from None


def _definitions(items: list[Any]) -> dict[str, Any]:
    """Collect `(define-fun name () Sort value)` entries from a get-model reply."""
    found: dict[str, Any] = {}
    for item in items:
        if not isinstance(item, list):
            continue
        entries = item[1:] if item and item[0] == "model" else item
        for entry in entries:
            if (
                isinstance(entry, list)
                and len(entry) == 5
                and entry[0] == "define-fun"
                and entry[2] == []
            ):
                found[entry[1]] = entry[4]
    return found


def _errors(items: list[Any]) -> list[str]:
    return [" ".join(map(str, item[1:])) for item in items if isinstance(item, list) and item[:1] == ["error"]]


def _element_key(raw: Any) -> str:
    return raw if isinstance(raw, str) else repr(raw)


def _interpret(raw: Any, sort: Sort) -> Value:
    if sort == Sort.BOOL and raw in ("true", "false"):
        return Value(Sort.BOOL, raw == "true")
    if sort == Sort.INT:
        if isinstance(raw, str) and re.fullmatch(r"\d+", raw):
            return Value(Sort.INT, int(raw))
        if isinstance(raw, list) and len(raw) == 2 and raw[0] == "-" and re.fullmatch(r"\d+", str(raw[1])):
            return Value(Sort.INT, -int(raw[1]))
    if sort == Sort.STRING and isinstance(raw, SmtString):
        return Value(Sort.STRING, str(raw))
    raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, f"cannot read {raw!r} as a {sort.value} value")


def parse_model(solver_output: str, f: Formula) -> SatResult:
    items = parse_sexprs(solver_output)
    if not items or not isinstance(items[0], str):
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, "solver printed no check-sat answer")
    status = items[0]
    if status == "unsat":
        return UNSAT
    if status == "unknown":
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, "solver answered unknown")
    if status != "sat":
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, f"unexpected solver answer {status!r}")

    errors = _errors(items[1:])
    if errors:
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, f"solver reported: {errors[0]}")
    definitions = _definitions(items[1:])
    if not definitions and f.variables:
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, "solver answered sat without a model")

    literals = _literals(f)
    # solver-side element -> literal constant it denotes
    element_literal: dict[str, Value] = {}
    for literal in literals:
        raw = definitions.get(str(literal))
        if raw is not None:
            element_literal[_element_key(raw)] = literal

    reserved = set(constants(f.body))
    fresh = FreshValues(reserved)
    renamed: dict[str, Value] = {}
    model: dict[Var, Value] = {}
    for var in f.variables:
        raw = definitions.get(var.name)
        if raw is None:
            # the solver may drop variables the assertion never mentions
            model[var] = fresh.next(var.sort)
            continue
        if var.sort != Sort.UNINTERPRETED:
            model[var] = _interpret(raw, var.sort)
            continue
        key = _element_key(raw)
        if key in element_literal:
            model[var] = element_literal[key]
        else:
            if key not in renamed:
                renamed[key] = fresh.next(Sort.UNINTERPRETED)
            model[var] = renamed[key]

    if not eval_predicate(f.body, model):
        raise SolverError(ErrorCode.EXTERNAL_SOLVER_FAILURE, "solver model does not satisfy the formula")
    logger.debug(f"Read back a model for {len(model)} variable(s)")
    return SatResult(SatStatus.SAT, model)
