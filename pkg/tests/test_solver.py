"""Tests for the builtin solver, SMT-LIB2 emission/read-back and the dispatcher."""

import pytest

from qdet.errors import ErrorCode, SolverError
from qdet.models.formula import Formula, TupleVar
from qdet.models.predicate import FALSE, TRUE, Atom, Not, Op, Or, Var, conj, disj, eq, eval_predicate, neg
from qdet.models.sat import SatStatus
from qdet.models.schema import RelationDecl, Sort, Value, fresh
from qdet.schemas.solver import Backend, SolverConfig
from qdet.services import solver as solver_module
from qdet.services.formula_builder import build_negated_star
from qdet.services.solver import solve
from qdet.services.solver.builtin import UnionFind, solve_builtin
from qdet.services.solver.external import run_solver, solve_external
from qdet.services.solver.smtlib import emit_smtlib, parse_model, parse_sexprs
from tests.helpers import PROJECTION_MISMATCH, SELECTED, brute_force_sat, load

U = Sort.UNINTERPRETED


def tuple_var(*sorts: Sort) -> TupleVar:
    rel = RelationDecl("R", tuple((f"c{k}", s) for k, s in enumerate(sorts)))
    return TupleVar.over("x", 1, rel)


def formula(body, tv: TupleVar) -> Formula:
    return Formula(body=body, tuple_vars=(tv,), roles={})


class TestUnionFind:
    """Tests for the union-find structure."""

    def test_union_and_find(self):
        """Merged terms share a representative."""
        a, b, c, d = (Var(name, U) for name in "abcd")
        uf = UnionFind()
        uf.union(a, b)
        uf.union(c, d)
        assert uf.find(a) == uf.find(b)
        assert uf.find(a) != uf.find(c)
        uf.union(b, d)
        assert uf.find(a) == uf.find(c)
        # the smallest term represents its class
        assert uf.find(d) == a


class TestBuiltinSolver:
    """Tests for the builtin backend."""

    def test_trivial_bodies(self):
        """TRUE is satisfiable, FALSE is not."""
        tv = tuple_var(U)
        assert solve_builtin(formula(TRUE, tv)).is_sat
        assert solve_builtin(formula(FALSE, tv)).status == SatStatus.UNSAT

    def test_transitivity(self):
        """x0 = x1, x1 = x2 and x0 != x2 is unsatisfiable."""
        tv = tuple_var(U, U, U)
        x0, x1, x2 = tv.variables
        body = conj(eq(x0, x1), eq(x1, x2), neg(eq(x0, x2)))
        assert solve_builtin(formula(body, tv)).status == SatStatus.UNSAT

    def test_distinct_literals(self):
        """A variable cannot equal two different constants."""
        tv = tuple_var(U)
        (x,) = tv.variables
        assert not solve_builtin(formula(conj(eq(x, fresh(0)), eq(x, fresh(1))), tv)).is_sat

    def test_model_satisfies_formula(self):
        """A SAT answer carries a model for every variable that satisfies the body."""
        tv = tuple_var(U, U, U)
        x0, x1, x2 = tv.variables
        body = conj(disj(eq(x0, x1), eq(x0, fresh(3))), neg(eq(x1, x2)), neg(eq(x0, fresh(0))))
        result = solve_builtin(formula(body, tv))
        assert result.is_sat
        assert set(result.model) == {x0, x1, x2}
        assert eval_predicate(body, result.model)

    def test_fresh_values_avoid_literals(self):
        """Values invented for free variables never collide with literals."""
        tv = tuple_var(U)
        (x,) = tv.variables
        result = solve_builtin(formula(neg(eq(x, fresh(0))), tv))
        assert result.model[x] != fresh(0)

    def test_bool_domain_has_two_values(self):
        """Three pairwise different booleans do not exist; two do."""
        tv = tuple_var(Sort.BOOL, Sort.BOOL, Sort.BOOL)
        b0, b1, b2 = tv.variables
        assert not solve_builtin(formula(conj(neg(eq(b0, b1)), neg(eq(b1, b2)), neg(eq(b0, b2))), tv)).is_sat
        result = solve_builtin(formula(conj(neg(eq(b0, b1)), eq(b2, Value(Sort.BOOL, True))), tv))
        assert result.is_sat
        assert result.model[b0] != result.model[b1]
        assert result.model[b2] == Value(Sort.BOOL, True)

    def test_int_equalities_are_supported(self):
        """Equalities over ints are decided like any infinite sort."""
        tv = tuple_var(Sort.INT, Sort.INT)
        i0, i1 = tv.variables
        result = solve_builtin(formula(conj(eq(i0, Value(Sort.INT, 7)), neg(eq(i0, i1))), tv))
        assert result.model[i0] == Value(Sort.INT, 7)
        assert result.model[i1] != Value(Sort.INT, 7)

    def test_order_atoms_unsupported(self):
        """Order comparisons are outside the builtin theory."""
        tv = tuple_var(Sort.INT, Sort.INT)
        i0, i1 = tv.variables
        with pytest.raises(SolverError) as exc:
            solve_builtin(formula(Atom(Op.LT, i0, i1), tv))
        assert exc.value.code == ErrorCode.UNSUPPORTED_THEORY

    def test_atom_limit(self):
        """Formulas above the atom limit are declined."""
        tv = tuple_var(U, U, U)
        x0, x1, x2 = tv.variables
        body = Or((Atom(Op.EQ, x0, x1), Atom(Op.EQ, x1, x2), Atom(Op.EQ, x0, x2)))
        with pytest.raises(SolverError) as exc:
            solve_builtin(formula(body, tv), max_atoms=2)
        assert exc.value.code == ErrorCode.UNSUPPORTED_THEORY

    def test_symmetric_atoms_coincide(self):
        """x = y and y = x are the same atom to the search."""
        tv = tuple_var(U, U)
        x, y = tv.variables
        body = conj(Atom(Op.EQ, x, y), Not(Atom(Op.EQ, y, x)))
        assert not solve_builtin(formula(body, tv)).is_sat

    def test_agrees_with_brute_force(self):
        """The builtin answer matches exhaustive search on sample formulas."""
        for text in (PROJECTION_MISMATCH, SELECTED):
            problem = load(text)
            f = build_negated_star(problem, 1)
            assert solve_builtin(f).is_sat == brute_force_sat(f)


class TestSmtlibEmission:
    """Tests for SMT-LIB2 script emission."""

    def test_script_layout(self):
        """Declarations, one assertion, then check-sat and get-model."""
        script = emit_smtlib(build_negated_star(load(PROJECTION_MISMATCH), 1))
        assert script.splitlines() == [
            "(set-option :produce-models true)",
            "(set-logic ALL)",
            "(declare-sort U 0)",
            "(declare-const |t1.A| U)",
            "(declare-const |t1.B| U)",
            "(declare-const |t1'1.A| U)",
            "(declare-const |t1'1.B| U)",
            "(assert (and (= |t1'1.A| |t1.A|) (not (= |t1'1.B| |t1.B|))))",
            "(check-sat)",
            "(get-model)",
        ]

    def test_literals_become_constants(self):
        """Each #n literal is a declared constant of the uninterpreted sort."""
        script = emit_smtlib(build_negated_star(load(SELECTED), 1))
        assert "(declare-const |#0| U)" in script
        assert "distinct" not in script

    def test_distinct_literals_asserted(self):
        """Two or more literals are asserted pairwise distinct."""
        tv = tuple_var(U)
        (x,) = tv.variables
        script = emit_smtlib(formula(disj(eq(x, fresh(0)), eq(x, fresh(1))), tv))
        assert "(assert (distinct |#0| |#1|))" in script

    def test_other_sorts(self):
        """Ints, bools and strings use the built-in SMT sorts."""
        tv = tuple_var(Sort.INT, Sort.BOOL, Sort.STRING)
        i, b, s = tv.variables
        body = conj(eq(i, Value(Sort.INT, -3)), eq(b, Value(Sort.BOOL, True)), eq(s, Value(Sort.STRING, 'a"b')))
        script = emit_smtlib(formula(body, tv))
        assert "declare-sort" not in script
        assert "(declare-const |x.c0| Int)" in script
        assert "(= |x.c0| (- 3))" in script
        assert "(= |x.c1| true)" in script
        assert '(= |x.c2| "a""b")' in script

    def test_deterministic(self):
        """Emitting twice gives the same text."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        assert emit_smtlib(f) == emit_smtlib(f)


MISMATCH_MODEL = """\
sat
(
  (define-fun |t1'1.B| () U U!val!2)
  (define-fun |t1.A| () U U!val!0)
  (define-fun |t1.B| () U U!val!1)
  (define-fun |t1'1.A| () U U!val!0)
)
"""


class TestModelReadBack:
    """Tests for reading solver output back."""

    def test_sexpr_parsing(self):
        """Symbols, quoted symbols, strings and lists are read."""
        assert parse_sexprs('sat (a |b c| "d""e" (f))') == ["sat", ["a", "b c", 'd"e', ["f"]]]

    def test_uninterpreted_model(self):
        """Solver elements are renamed to canonical #n values in variable order."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        result = parse_model(MISMATCH_MODEL, f)
        assert result.is_sat
        by_name = {v.name: value for v, value in result.model.items()}
        assert by_name == {"t1.A": fresh(0), "t1.B": fresh(1), "t1'1.A": fresh(0), "t1'1.B": fresh(2)}

    def test_model_keyword_wrapper(self):
        """The older (model ...) wrapper is accepted."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        wrapped = MISMATCH_MODEL.replace("sat\n(", "sat\n(model", 1)
        assert parse_model(wrapped, f).is_sat

    def test_literal_elements_map_back(self):
        """An element equal to a literal's interpretation reads as that literal."""
        tv = tuple_var(U, U)
        x0, x1 = tv.variables
        f = formula(conj(eq(x0, fresh(0)), neg(eq(x1, fresh(0)))), tv)
        output = (
            "sat\n("
            "(define-fun |#0| () U U!val!0)"
            "(define-fun |x.c0| () U U!val!0)"
            "(define-fun |x.c1| () U U!val!1))"
        )
        assert parse_model(output, f).model == {x0: fresh(0), x1: fresh(1)}

    def test_unsat(self):
        """unsat is read even when get-model then fails."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        output = 'unsat\n(error "line 9 column 10: model is not available")\n'
        assert parse_model(output, f).status == SatStatus.UNSAT

    def test_unknown_is_a_failure(self):
        """unknown answers are reported as solver failures."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        with pytest.raises(SolverError) as exc:
            parse_model("unknown\n", f)
        assert exc.value.code == ErrorCode.EXTERNAL_SOLVER_FAILURE

    def test_wrong_model_rejected(self):
        """A model that does not satisfy the formula is rejected."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        bad = MISMATCH_MODEL.replace("U!val!2", "U!val!1")
        with pytest.raises(SolverError) as exc:
            parse_model(bad, f)
        assert exc.value.code == ErrorCode.EXTERNAL_SOLVER_FAILURE

    def test_scalar_sorts(self):
        """Ints (including negatives), bools and strings are read back."""
        tv = tuple_var(Sort.INT, Sort.BOOL, Sort.STRING)
        i, b, s = tv.variables
        body = conj(eq(i, Value(Sort.INT, -3)), eq(b, Value(Sort.BOOL, False)), eq(s, Value(Sort.STRING, "q")))
        output = (
            "sat\n("
            "(define-fun |x.c0| () Int (- 3))"
            "(define-fun |x.c1| () Bool false)"
            '(define-fun |x.c2| () String "q"))'
        )
        model = parse_model(output, formula(body, tv)).model
        assert model == {i: Value(Sort.INT, -3), b: Value(Sort.BOOL, False), s: Value(Sort.STRING, "q")}


class TestExternalSolver:
    """Tests for the external solver subprocess."""

    def test_round_trip_through_subprocess(self, fake_solver):
        """The script goes to stdin and the model comes back from stdout."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        result = solve_external(f, fake_solver(MISMATCH_MODEL), time_limit=10)
        assert result.is_sat

    def test_unsat_with_nonzero_exit(self, fake_solver):
        """Some solvers exit nonzero after unsat because get-model fails."""
        output = run_solver(fake_solver("unsat\n(error \"no model\")", exit_code=1), "(check-sat)\n", 10)
        assert output.startswith("unsat")

    def test_nonzero_exit(self, fake_solver):
        """Other nonzero exits are solver failures."""
        with pytest.raises(SolverError) as exc:
            run_solver(fake_solver("(error \"boom\")", exit_code=3), "(check-sat)\n", 10)
        assert exc.value.code == ErrorCode.EXTERNAL_SOLVER_FAILURE

    def test_missing_binary(self):
        """A command that cannot be started is a solver failure."""
        with pytest.raises(SolverError) as exc:
            run_solver("/nonexistent/qdet-solver", "(check-sat)\n", 10)
        assert exc.value.code == ErrorCode.EXTERNAL_SOLVER_FAILURE

    def test_timeout(self, fake_solver):
        """A solver running past the time limit is stopped."""
        with pytest.raises(SolverError) as exc:
            run_solver(fake_solver("sat", delay=5), "(check-sat)\n", 0.5)
        assert exc.value.code == ErrorCode.SOLVER_TIMEOUT


class TestDispatch:
    """Tests for the solve dispatcher."""

    def test_builtin_by_default(self):
        """The default configuration solves in-process."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        assert solve(f, SolverConfig()).is_sat

    def test_external_backend(self, fake_solver):
        """The external backend runs the configured command."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        cfg = SolverConfig(backend=Backend.EXTERNAL, external_command=fake_solver(MISMATCH_MODEL))
        assert solve(f, cfg).is_sat

    def test_external_needs_command(self):
        """Selecting the external backend without a command is a configuration error."""
        with pytest.raises(ValueError):
            SolverConfig(backend=Backend.EXTERNAL)

    def test_fallback_to_external(self, monkeypatch):
        """A declined formula goes to the external solver when one is configured."""
        calls = []

        def fake_external(f, command, time_limit):
            calls.append(command)
            return solve_builtin(f)

        monkeypatch.setattr(solver_module, "solve_external", fake_external)
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        cfg = SolverConfig(builtin_max_atoms=1, external_command="z3 -in")
        assert solve(f, cfg).is_sat
        assert calls == ["z3 -in"]

    def test_no_fallback_without_command(self):
        """Without an external command the builtin refusal surfaces."""
        f = build_negated_star(load(PROJECTION_MISMATCH), 1)
        with pytest.raises(SolverError) as exc:
            solve(f, SolverConfig(builtin_max_atoms=1))
        assert exc.value.code == ErrorCode.UNSUPPORTED_THEORY
