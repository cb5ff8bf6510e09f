"""Built-in decision procedure for quantifier-free equality logic.

Propositional assignments to the atoms are explored depth-first with
three-valued evaluation pruning the search. Each partial assignment is
checked for equality-logic consistency with union-find: atoms assigned
true merge classes, atoms assigned false must separate them, distinct
literals of one sort never share a class, and BOOL classes must be
two-colourable. Uninterpreted, int and string domains are infinite, so
any consistent assignment has a model.
"""

import logging
from collections import deque
from typing import Optional

from qdet.errors import ErrorCode, SolverError, VerificationError
from qdet.models.formula import Formula
from qdet.models.predicate import (
    And,
    Atom,
    Const,
    Not,
    Op,
    Or,
    Predicate,
    Term,
    Var,
    atom,
    conj,
    disj,
    eval_predicate,
    iter_atoms,
    neg,
)
from qdet.models.sat import UNSAT, SatResult, SatStatus
from qdet.models.schema import Sort, Value
from qdet.services.solver.fresh import FreshValues

logger = logging.getLogger(__name__)


def _term_key(term: Term) -> tuple:
    if isinstance(term, Var):
        return (0, term.name)
    if isinstance(term, Value):
        return (1,) + term.sort_key()
    raise SolverError(ErrorCode.UNSUPPORTED_THEORY, f"unexpected term {term} in formula")


def _term_sort(term: Term) -> Sort:
    return term.sort


def canonical(p: Predicate) -> Predicate:
    """Rebuild p with equality operands in a fixed order so a = b and b = a coincide."""
    if isinstance(p, Const):
        return p
    if isinstance(p, Atom):
        if p.op != Op.EQ:
            raise SolverError(
                ErrorCode.UNSUPPORTED_THEORY,
                f"the builtin backend decides equality only; found '{p.op.value}' (use --backend external)",
            )
        left, right = sorted((p.left, p.right), key=_term_key)
        return atom(Op.EQ, left, right)
    if isinstance(p, Not):
        return neg(canonical(p.arg))
    if isinstance(p, And):
        return conj(*(canonical(a) for a in p.args))
    if isinstance(p, Or):
        return disj(*(canonical(a) for a in p.args))
    raise TypeError(f"not a predicate: {p!r}")


def _partial(p: Predicate, assignment: dict[Atom, bool]) -> Optional[bool]:
    """Kleene evaluation: None when unassigned atoms leave the value open."""
    if isinstance(p, Atom):
        return assignment.get(p)
    if isinstance(p, Const):
        return p.value
    if isinstance(p, Not):
        inner = _partial(p.arg, assignment)
        return None if inner is None else not inner
    if isinstance(p, And):
        result: Optional[bool] = True
        for arg in p.args:
            value = _partial(arg, assignment)
            if value is False:
                return False
            if value is None:
                result = None
        return result
    if isinstance(p, Or):
        result = False
        for arg in p.args:
            value = _partial(arg, assignment)
            if value is True:
                return True
            if value is None:
                result = None
        return result
    raise TypeError(f"not a predicate: {p!r}")


class UnionFind:
    def __init__(self):
        self.parent: dict[Term, Term] = {}

    def find(self, x: Term) -> Term:
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        # path halving
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: Term, b: Term) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller key as root so results are deterministic
            if _term_key(rb) < _term_key(ra):
                ra, rb = rb, ra
            self.parent[rb] = ra


class _Closure:
    """Equivalence classes induced by one (partial) assignment."""

    def __init__(self, terms: list[Term], assignment: dict[Atom, bool]):
        self.uf = UnionFind()
        for term in terms:
            self.uf.find(term)
        for a, value in assignment.items():
            if value:
                self.uf.union(a.left, a.right)
        self.assignment = assignment
        self.terms = terms
        self.bool_colours: dict[Term, bool] = {}

    def consistent(self) -> bool:
        literal_of: dict[Term, Value] = {}
        for term in self.terms:
            if isinstance(term, Value):
                root = self.uf.find(term)
                seen = literal_of.setdefault(root, term)
                if seen != term:
                    return False

        apart: dict[Term, set[Term]] = {}
        for a, value in self.assignment.items():
            if value:
                continue
            ra, rb = self.uf.find(a.left), self.uf.find(a.right)
            if ra == rb:
                return False
            if _term_sort(a.left) == Sort.BOOL:
                apart.setdefault(ra, set()).add(rb)
                apart.setdefault(rb, set()).add(ra)

        return self._colour_bools(literal_of, apart)

    def _colour_bools(self, literal_of: dict[Term, Value], apart: dict[Term, set[Term]]) -> bool:
        roots = []
        for term in self.terms:
            if _term_sort(term) == Sort.BOOL:
                root = self.uf.find(term)
                if root not in roots:
                    roots.append(root)
        colours: dict[Term, bool] = {}
        # literal-bearing classes first so their colour propagates
        ordered = sorted(roots, key=lambda r: r not in literal_of)
        for start in ordered:
            if start in colours:
                continue
            colours[start] = literal_of[start].value if start in literal_of else False
            queue = deque([start])
            while queue:
                node = queue.popleft()
                for other in apart.get(node, ()):
                    want = not colours[node]
                    if other in colours:
                        if colours[other] != want:
                            return False
                        continue
                    if other in literal_of and literal_of[other].value != want:
                        return False
                    colours[other] = want
                    queue.append(other)
        self.bool_colours = colours
        return True

    def model(self, variables: tuple[Var, ...], reserved: set[Value]) -> dict[Var, Value]:
        fresh = FreshValues(reserved)
        class_value: dict[Term, Value] = {}
        for term in self.terms:
            if isinstance(term, Value):
                class_value[self.uf.find(term)] = term
        model: dict[Var, Value] = {}
        for var in variables:
            root = self.uf.find(var)
            if root not in class_value:
                if var.sort == Sort.BOOL:
                    class_value[root] = Value(Sort.BOOL, self.bool_colours.get(root, False))
                else:
                    class_value[root] = fresh.next(var.sort)
            model[var] = class_value[root]
        return model


def solve_builtin(f: Formula, max_atoms: int = 30) -> SatResult:
    body = canonical(f.body)
    atoms = list(dict.fromkeys(iter_atoms(body)))
    if len(atoms) > max_atoms:
        raise SolverError(
            ErrorCode.UNSUPPORTED_THEORY,
            f"formula has {len(atoms)} atoms; the builtin backend accepts at most {max_atoms}",
        )

    variables = f.variables
    terms: list[Term] = list(dict.fromkeys([*variables, *(t for a in atoms for t in (a.left, a.right))]))
    reserved = {t for t in terms if isinstance(t, Value)}

    assignment: dict[Atom, bool] = {}
    explored = 0

    def search(k: int) -> Optional[_Closure]:
        nonlocal explored
        explored += 1
        value = _partial(body, assignment)
        if value is False:
            return None
        closure = _Closure(terms, assignment)
        if not closure.consistent():
            return None
        if value is True:
            return closure
        for choice in (True, False):
            assignment[atoms[k]] = choice
            found = search(k + 1)
            if found is not None:
                return found
            del assignment[atoms[k]]
        return None

    closure = search(0)
    logger.debug(f"Builtin solver explored {explored} partial assignment(s) over {len(atoms)} atom(s)")
    if closure is None:
        return UNSAT

    model = closure.model(variables, reserved)
    if not eval_predicate(f.body, model):
        logger.error(f"Builtin model does not satisfy formula: {model}")
        raise VerificationError("builtin model", "extracted model does not satisfy the formula")
    return SatResult(SatStatus.SAT, model)
