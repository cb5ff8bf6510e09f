"""Readable rendering of the per-relation determinacy condition.

For each relation the positive, quantified condition is shown with its
Phi/Psi instances spelled out per view, followed by the quantifier-free
negation that is handed to the solver.
"""

from dataclasses import dataclass

from qdet.models.formula import TupleVar
from qdet.models.predicate import LATEX, UNICODE, Notation, Term, Var, format_predicate
from qdet.models.problem import NormalizedProblem
from qdet.services.formula_builder import (
    base_tuple_vars,
    build_negated_star,
    build_phi,
    build_psi,
    instantiate,
)


@dataclass(frozen=True)
class Glyphs:
    notation: Notation
    forall: str
    implies: str
    big_or: str
    seq: str
    except_: str
    mapsto: str
    theta: str
    phi: str
    psi: str
    prime: str

    def sub(self, *indices: object) -> str:
        return "_{" + ",".join(map(str, indices)) + "}" if self.notation is LATEX else "_" + ",".join(map(str, indices))


PLAIN = Glyphs(UNICODE, "∀", "⇒", "⋁", "𝐭", "EXCEPT", "↦", "θ", "Φ", "Ψ", "'")
MATH = Glyphs(
    LATEX,
    r"\forall ",
    r"\Rightarrow",
    r"\bigvee",
    r"\mathbf{t}",
    r"\ \mathrm{EXCEPT}\ ",
    r"\mapsto",
    r"\theta",
    r"\Phi",
    r"\Psi",
    "'",
)


def _term(term: Term) -> str:
    return term.name if isinstance(term, Var) else str(term)


def explain_relation(problem: NormalizedProblem, i: int, g: Glyphs = PLAIN) -> str:
    schema = problem.schema
    rel = schema.relation_at(i)
    base = base_tuple_vars(schema)
    t_i = base[i - 1]

    def fmt(p) -> str:
        return format_predicate(p, g.notation, _term)

    t_prime = TupleVar.over(f"t{i}{g.prime}", i, rel)
    n = problem.n(i)

    lines = [f"relation {i}: {rel.name}  (n{g.sub(i)} = {n})"]
    lines.append(f"  {g.seq} = ({', '.join(tv.label for tv in base)})")
    if n == 0:
        lines.append(f"  {g.forall}{g.seq}: {g.notation.not_}{g.theta}({g.seq})")
    else:
        lines.append(
            f"  {g.forall}{g.seq}: {g.theta}({g.seq}) {g.implies} {g.big_or}{g.sub('j')} "
            f"( {g.theta}{g.sub(i, 'j')}({t_i.label}) {g.notation.and_} "
            f"{g.forall}{t_prime.label}: {g.phi}{g.sub(i, 'j')}({t_i.label}, {t_prime.label}) {g.implies} "
            f"{g.psi}{g.sub(i, 'j')}({g.seq}, {t_prime.label}) )"
        )
    lines.append(f"  {g.theta}({g.seq}) = {fmt(instantiate(problem.query.predicate, base))}")

    for j, view in enumerate(problem.views_for(i), start=1):
        replaced = f"{g.seq}{g.except_}{i} {g.mapsto} {t_prime.label}"
        lines.append(f"  j = {j} (view {view.name}):")
        lines.append(f"    {g.theta}{g.sub(i, j)}({t_i.label}) = {fmt(instantiate(view.predicate, [t_i]))}")
        lines.append(
            f"    {g.phi}{g.sub(i, j)}({t_i.label}, {t_prime.label}) = "
            f"{fmt(build_phi(problem, i, j, t_i, t_prime))}"
        )
        lines.append(
            f"    {g.psi}{g.sub(i, j)}({g.seq}, {t_prime.label}) = {g.theta}({replaced}) "
            f"{g.notation.and_} ({replaced})[U] = {g.seq}[U]"
        )
        lines.append(f"      = {fmt(build_psi(problem, i, j, base, t_prime))}")

    negated = build_negated_star(problem, i)
    witnesses = [tv.label for tv in negated.tuple_vars[len(base):]]
    header = f"  negated, witnesses {', '.join(witnesses)}:" if witnesses else "  negated:"
    lines.append(header)
    lines.append(f"    {fmt(negated.body)}")
    return "\n".join(lines)


def explain_problem(problem: NormalizedProblem, latex: bool = False) -> str:
    g = MATH if latex else PLAIN
    return "\n\n".join(explain_relation(problem, i, g) for i in range(1, problem.m + 1)) + "\n"
