"""Quantifier-free predicate AST shared by selections and built formulas.

Terms are column references (in view and query predicates), logical
variables (in built formulas) or constants.
"""

from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from enum import Enum

from qdet.errors import ErrorCode, QdetError
from qdet.models.schema import ColumnRef, Sort, Value


@dataclass(frozen=True, slots=True, order=True)
class Var:
    """A logical variable: one column of a tuple variable."""

    name: str
    sort: Sort

    def __str__(self) -> str:
        return self.name


Term = ColumnRef | Var | Value


class Op(str, Enum):
    EQ = "="
    LT = "<"
    LE = "<="


class Predicate:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Const(Predicate):
    value: bool


@dataclass(frozen=True, slots=True)
class Atom(Predicate):
    op: Op
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Not(Predicate):
    arg: Predicate


@dataclass(frozen=True, slots=True)
class And(Predicate):
    args: tuple[Predicate, ...]


@dataclass(frozen=True, slots=True)
class Or(Predicate):
    args: tuple[Predicate, ...]


TRUE = Const(True)
FALSE = Const(False)


# Folding constructors


def atom(op: Op, left: Term, right: Term) -> Predicate:
    if isinstance(left, Value) and isinstance(right, Value):
        return Const(_compare(op, left, right))
    if left == right:
        return FALSE if op == Op.LT else TRUE
    return Atom(op, left, right)


def eq(left: Term, right: Term) -> Predicate:
    return atom(Op.EQ, left, right)


def neg(p: Predicate) -> Predicate:
    if isinstance(p, Const):
        return Const(not p.value)
    if isinstance(p, Not):
        return p.arg
    return Not(p)


def conj(*args: Predicate) -> Predicate:
    return _junction(And, args, unit=TRUE, zero=FALSE)


def disj(*args: Predicate) -> Predicate:
    return _junction(Or, args, unit=FALSE, zero=TRUE)


def _junction(kind, args, unit: Const, zero: Const) -> Predicate:
    flat: list[Predicate] = []
    for arg in args:
        parts = arg.args if isinstance(arg, kind) else (arg,)
        for part in parts:
            if part == zero:
                return zero
            if part == unit or part in flat:
                continue
            flat.append(part)
    if not flat:
        return unit
    if len(flat) == 1:
        return flat[0]
    return kind(tuple(flat))


def nnf(p: Predicate, positive: bool = True) -> Predicate:
    """Negation normal form with TRUE/FALSE folding."""
    if isinstance(p, Const):
        return Const(p.value == positive)
    if isinstance(p, Atom):
        folded = atom(p.op, p.left, p.right)
        return folded if positive else neg(folded)
    if isinstance(p, Not):
        return nnf(p.arg, not positive)
    if isinstance(p, And):
        parts = [nnf(a, positive) for a in p.args]
        return conj(*parts) if positive else disj(*parts)
    if isinstance(p, Or):
        parts = [nnf(a, positive) for a in p.args]
        return disj(*parts) if positive else conj(*parts)
    raise TypeError(f"not a predicate: {p!r}")


# Traversal


def iter_atoms(p: Predicate) -> Iterator[Atom]:
    if isinstance(p, Atom):
        yield p
    elif isinstance(p, Not):
        yield from iter_atoms(p.arg)
    elif isinstance(p, (And, Or)):
        for arg in p.args:
            yield from iter_atoms(arg)


def iter_terms(p: Predicate) -> Iterator[Term]:
    for a in iter_atoms(p):
        yield a.left
        yield a.right


def columns(p: Predicate) -> set[ColumnRef]:
    return {t for t in iter_terms(p) if isinstance(t, ColumnRef)}


def constants(p: Predicate) -> set[Value]:
    return {t for t in iter_terms(p) if isinstance(t, Value)}


def substitute(p: Predicate, mapping: Mapping[Term, Term]) -> Predicate:
    """Replace terms, folding trivial atoms and constants on the way up."""
    if isinstance(p, Const):
        return p
    if isinstance(p, Atom):
        return atom(p.op, mapping.get(p.left, p.left), mapping.get(p.right, p.right))
    if isinstance(p, Not):
        return neg(substitute(p.arg, mapping))
    if isinstance(p, And):
        return conj(*(substitute(a, mapping) for a in p.args))
    if isinstance(p, Or):
        return disj(*(substitute(a, mapping) for a in p.args))
    raise TypeError(f"not a predicate: {p!r}")


# Evaluation


def _compare(op: Op, left: Value, right: Value) -> bool:
    if left.sort != right.sort:
        raise QdetError(
            ErrorCode.SORT_MISMATCH,
            f"cannot compare {left.sort.value} {left} with {right.sort.value} {right}",
        )
    if op == Op.EQ:
        return left.value == right.value
    if left.sort != Sort.INT:
        raise QdetError(ErrorCode.SORT_MISMATCH, f"'{op.value}' needs int operands, got {left.sort.value}")
    if op == Op.LT:
        return left.value < right.value
    return left.value <= right.value


def _resolve(term: Term, binding: Mapping[Term, Value]) -> Value:
    if isinstance(term, Value):
        return term
    try:
        return binding[term]
    except KeyError:
        raise QdetError(ErrorCode.UNBOUND_COLUMN, f"no value bound for {term}") from None


def eval_predicate(p: Predicate, binding: Mapping[Term, Value]) -> bool:
    if isinstance(p, Atom):
        return _compare(p.op, _resolve(p.left, binding), _resolve(p.right, binding))
    if isinstance(p, Const):
        return p.value
    if isinstance(p, Not):
        return not eval_predicate(p.arg, binding)
    if isinstance(p, And):
        return all(eval_predicate(a, binding) for a in p.args)
    if isinstance(p, Or):
        return any(eval_predicate(a, binding) for a in p.args)
    raise TypeError(f"not a predicate: {p!r}")


# Rendering


@dataclass(frozen=True)
class Notation:
    true: str
    false: str
    and_: str
    or_: str
    not_: str
    ops: Mapping[Op, str]


DSL = Notation("true", "false", "and", "or", "not ", {Op.EQ: "=", Op.LT: "<", Op.LE: "<="})
UNICODE = Notation("⊤", "⊥", "∧", "∨", "¬", {Op.EQ: "=", Op.LT: "<", Op.LE: "≤"})
LATEX = Notation(
    r"\top", r"\bot", r"\land", r"\lor", r"\lnot ", {Op.EQ: "=", Op.LT: "<", Op.LE: r"\leq"}
)

_PRECEDENCE = {Or: 1, And: 2, Not: 3}


def format_predicate(
    p: Predicate,
    notation: Notation = DSL,
    term: Callable[[Term], str] = str,
) -> str:
    if isinstance(p, Const):
        return notation.true if p.value else notation.false
    if isinstance(p, Atom):
        return f"{term(p.left)} {notation.ops[p.op]} {term(p.right)}"
    if isinstance(p, Not):
        inner = format_predicate(p.arg, notation, term)
        if isinstance(p.arg, (And, Or)) and p.arg.args:
            inner = f"({inner})"
        return f"{notation.not_}{inner}"
    if not p.args:
        return notation.true if isinstance(p, And) else notation.false
    sep = f" {notation.and_ if isinstance(p, And) else notation.or_} "
    parts = []
    for arg in p.args:
        text = format_predicate(arg, notation, term)
        # same-kind nesting keeps its parentheses so re-parsing is structural
        if type(arg) in _PRECEDENCE and _PRECEDENCE[type(arg)] <= _PRECEDENCE[type(p)] and arg.args:
            text = f"({text})"
        parts.append(text)
    return sep.join(parts)
