"""Tests for the problem-file parser and the canonical printer."""

import pytest

from qdet.errors import ParseError
from qdet.models.predicate import TRUE, And, Atom, Not, Op
from qdet.models.schema import ColumnRef, Sort, Value
from qdet.models.source import Severity, SourceFile
from qdet.services.parser import parse_problem, parse_with_diagnostics
from qdet.services.printer import format_problem
from tests.corpus import CORPUS
from tests.helpers import JOIN_DETERMINED, MIXED_SORTS, PROJECTION_MISMATCH, SELECTED


def errors_for(text: str) -> list[str]:
    problem, diagnostics = parse_with_diagnostics(SourceFile(text))
    assert problem is None
    return [d.message for d in diagnostics if d.severity == Severity.ERROR]


class TestParseValid:
    """Tests for parsing well-formed problems."""

    def test_projection_mismatch_problem(self):
        """Relations, views and the query are read with qualified columns."""
        problem = parse_problem(SourceFile(PROJECTION_MISMATCH))
        assert [r.name for r in problem.schema.relations] == ["R"]
        assert problem.schema.relation("R").columns == (("A", Sort.UNINTERPRETED), ("B", Sort.UNINTERPRETED))
        (view,) = problem.views
        assert view.name == "V"
        assert view.source == 1
        assert view.projection == (ColumnRef("R", "A"),)
        assert view.predicate == TRUE
        assert problem.query.projection == (ColumnRef("R", "B"),)
        assert problem.query.relations == ("R",)

    def test_unqualified_columns_in_view(self):
        """A view resolves bare column names against its source relation."""
        problem = parse_problem(SourceFile(SELECTED))
        (view,) = problem.views
        assert view.projection == (ColumnRef("R", "A"),)
        assert view.predicate == Atom(Op.EQ, ColumnRef("R", "B"), Value(Sort.UNINTERPRETED, 0))

    def test_join_query(self):
        """The query ranges over every relation in its from list."""
        problem = parse_problem(SourceFile(JOIN_DETERMINED))
        assert problem.schema.m == 2
        assert problem.query.relations == ("R1", "R2")
        assert problem.query.predicate == Atom(Op.EQ, ColumnRef("R1", "B"), ColumnRef("R2", "C"))

    def test_sugar_and_literals(self):
        """>= swaps into <=, and bool literals next to a bool column are values."""
        problem = parse_problem(SourceFile(MIXED_SORTS))
        age, active = ColumnRef("Emp", "age"), ColumnRef("Emp", "active")
        assert problem.query.predicate == And(
            (
                Atom(Op.LE, Value(Sort.INT, 18), age),
                Atom(Op.EQ, active, Value(Sort.BOOL, True)),
            )
        )

    def test_not_equal_is_negated_equality(self):
        """a != b reads as not (a = b)."""
        text = "relation R(A: string);\nquery project R.A where R.A != \"x\" from R;\n"
        problem = parse_problem(SourceFile(text))
        assert problem.query.predicate == Not(Atom(Op.EQ, ColumnRef("R", "A"), Value(Sort.STRING, "x")))

    def test_comments_are_ignored(self):
        """Everything after -- on a line is a comment."""
        text = "-- header\nrelation R(A: int); -- one column\nquery project R.A where true from R;\n"
        assert parse_problem(SourceFile(text)).schema.m == 1

    def test_duplicate_projection_column_warns(self):
        """A repeated projection column is a warning, not an error."""
        text = "relation R(A: int);\nview V = project A, A where true from R;\nquery project R.A where true from R;\n"
        problem, diagnostics = parse_with_diagnostics(SourceFile(text))
        assert problem is not None
        assert [d.severity for d in diagnostics] == [Severity.WARNING]


class TestParseErrors:
    """Tests for parser diagnostics."""

    def test_syntax_error_has_position(self):
        """A missing semicolon is reported at the next token."""
        text = "relation R(A: int)\nquery project R.A where true from R;\n"
        with pytest.raises(ParseError) as exc:
            parse_problem(SourceFile(text, "bad.qdet"))
        (diagnostic,) = exc.value.diagnostics
        assert diagnostic.line == 2
        assert diagnostic.column == 1
        assert diagnostic.render("bad.qdet").startswith("bad.qdet:2:1: error: ")

    def test_unknown_sort(self):
        """Sorts outside the four known ones are rejected with their position."""
        problem, diagnostics = parse_with_diagnostics(
            SourceFile("relation R(A: blob);\nquery project R.A where true from R;\n")
        )
        assert problem is None
        diagnostic = next(d for d in diagnostics if d.message.startswith("unknown sort"))
        assert "'blob'" in diagnostic.message
        assert (diagnostic.line, diagnostic.column) == (1, 15)

    def test_unknown_column(self):
        """A view naming a missing column is rejected."""
        text = "relation R(A: int);\nview V = project R.Z where true from R;\nquery project R.A where true from R;\n"
        assert "unknown column R.Z" in errors_for(text)

    def test_view_over_two_relations(self):
        """A view may only mention its own relation."""
        text = (
            "relation R(A: int);\nrelation S(B: int);\n"
            "view V = project R.A where S.B = 1 from R;\n"
            "query project R.A where true from R, S;\n"
        )
        assert "view must reference a single relation" in errors_for(text)

    def test_self_join(self):
        """Listing a relation twice in the query is not supported."""
        text = "relation R(A: int);\nquery project R.A where true from R, R;\n"
        assert "self join not supported: relation R listed twice" in errors_for(text)

    def test_query_must_cover_every_relation(self):
        """Each declared relation appears in the query exactly once."""
        text = "relation R(A: int);\nrelation S(B: int);\nquery project R.A where true from R;\n"
        assert "query must range over every declared relation (missing: S)" in errors_for(text)

    def test_sort_mismatch(self):
        """Comparing an uninterpreted column with an int literal is rejected."""
        text = "relation R(A: uninterpreted);\nquery project R.A where R.A = 1 from R;\n"
        assert "sort mismatch: cannot compare uninterpreted with int" in errors_for(text)

    def test_order_needs_ints(self):
        """< is only defined on int columns."""
        text = "relation R(A: uninterpreted, B: uninterpreted);\nquery project R.A where R.A < R.B from R;\n"
        assert "order comparison needs int operands, got uninterpreted" in errors_for(text)

    def test_ambiguous_column(self):
        """A bare column name shared by two relations must be qualified."""
        text = "relation R1(A: int);\nrelation R2(A: int);\nquery project A where true from R1, R2;\n"
        assert any(m.startswith("ambiguous column A") for m in errors_for(text))

    def test_missing_query(self):
        """A file without a query is rejected."""
        assert "no query declared" in errors_for("relation R(A: int);\n")

    def test_two_queries(self):
        """Exactly one query is allowed."""
        text = "relation R(A: int);\nquery project R.A where true from R;\nquery project R.A where false from R;\n"
        assert "exactly one query per file" in errors_for(text)

    def test_errors_are_collected(self):
        """Independent errors are all reported, not just the first."""
        text = (
            "relation R(A: int);\n"
            "view V = project R.Z where true from R;\n"
            "view W = project R.Y where true from R;\n"
            "query project R.A where true from R;\n"
        )
        assert len(errors_for(text)) == 2


class TestRoundTrip:
    """Tests for printing and parsing back."""

    @pytest.mark.parametrize("text", [PROJECTION_MISMATCH, SELECTED, JOIN_DETERMINED, MIXED_SORTS])
    def test_samples(self, text):
        """Printing and re-parsing gives back the same problem."""
        problem = parse_problem(SourceFile(text))
        assert parse_problem(SourceFile(format_problem(problem))) == problem

    def test_corpus(self):
        """Every corpus problem survives a print/parse round trip."""
        for text in CORPUS:
            problem = parse_problem(SourceFile(text))
            assert parse_problem(SourceFile(format_problem(problem))) == problem

    def test_printing_is_idempotent(self):
        """The canonical form is a fixed point of the printer."""
        once = format_problem(parse_problem(SourceFile(SELECTED)))
        assert format_problem(parse_problem(SourceFile(once))) == once

    def test_string_escapes(self):
        """Quotes and backslashes in string literals survive the round trip."""
        text = 'relation R(A: string);\nquery project R.A where R.A = "a\\"b\\\\c" from R;\n'
        problem = parse_problem(SourceFile(text))
        assert problem.query.predicate.right == Value(Sort.STRING, 'a"b\\c')
        assert parse_problem(SourceFile(format_problem(problem))) == problem
