"""Parser for the `.qdet` problem language.

    relation R(A: uninterpreted, B: int);
    view V = project R.A where R.A = R.B from R;
    query project R.A where true from R;

Syntax is handled by a lark LALR grammar; name resolution and sort checking
run as a second pass over the tree so every diagnostic carries a position.
"""

import logging
import re
from typing import Optional

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from qdet.errors import ParseError
from qdet.models.predicate import FALSE, TRUE, And, Atom, Not, Op, Or, Predicate, Term
from qdet.models.problem import Problem, QueryDef, ViewDef
from qdet.models.schema import ColumnRef, RelationDecl, Schema, Sort, Value
from qdet.models.source import ParseDiagnostic, Severity, SourceFile

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: decl*

?decl: relation | view | query

relation: "relation" NAME "(" coldecl ("," coldecl)* ")" ";"
coldecl: NAME ":" NAME
view: "view" NAME "=" "project" colrefs "where" disj "from" NAME ";"
query: "query" "project" colrefs "where" disj "from" NAME ("," NAME)* ";"

colrefs: colref ("," colref)*
colref: NAME ("." NAME)?

?disj: conj ("or" conj)*
?conj: neg ("and" neg)*
?neg: "not" neg -> not_
    | primary
?primary: "(" disj ")"
    | TRUE -> true_
    | FALSE -> false_
    | term "=" term -> eq
    | term "!=" term -> ne
    | term "<" term -> lt
    | term "<=" term -> le
    | term ">" term -> gt
    | term ">=" term -> ge

?term: colref
    | SIGNED_INT -> int_lit
    | STRING -> str_lit
    | FRESH -> fresh_lit
    | TRUE -> bool_lit
    | FALSE -> bool_lit

TRUE: "true"
FALSE: "false"
FRESH: /#\d+/
STRING: /"(\\.|[^"\\])*"/
COMMENT: /--[^\n]*/

%import common.CNAME -> NAME
%import common.SIGNED_INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = Lark(GRAMMAR, parser="lalr", propagate_positions=True)

_SORT_NAMES = ", ".join(s.value for s in Sort)


def _position(node: Tree | Token) -> tuple[int, int]:
    if isinstance(node, Token):
        return node.line or 1, node.column or 1
    meta = node.meta
    if getattr(meta, "empty", True):
        return 1, 1
    return meta.line, meta.column


class _Builder:
    """Second pass: resolves names and sorts, collecting diagnostics."""

    def __init__(self, text: str):
        self.text = text
        self.diagnostics: list[ParseDiagnostic] = []

    def error(self, node: Tree | Token | tuple[int, int], message: str) -> None:
        line, column = node if isinstance(node, tuple) else _position(node)
        self.diagnostics.append(ParseDiagnostic(Severity.ERROR, message, line, column))

    def warning(self, node: Tree | Token, message: str) -> None:
        line, column = _position(node)
        self.diagnostics.append(ParseDiagnostic(Severity.WARNING, message, line, column))

    @property
    def failed(self) -> bool:
        return any(d.severity == Severity.ERROR for d in self.diagnostics)

    def end_position(self) -> tuple[int, int]:
        lines = self.text.split("\n")
        while len(lines) > 1 and not lines[-1].strip():
            lines.pop()
        return len(lines), 1

    # Declarations

    def build(self, tree: Tree) -> Optional[Problem]:
        decls = tree.children
        relations = self.relations([d for d in decls if d.data == "relation"])
        if not relations:
            self.error((1, 1), "no relation declared")
            return None
        schema = Schema(tuple(relations))

        views = []
        seen_views: set[str] = set()
        for decl in decls:
            if decl.data != "view":
                continue
            name = decl.children[0]
            if str(name) in seen_views:
                self.error(name, f"view {name} declared twice")
                continue
            seen_views.add(str(name))
            view = self.view(schema, decl)
            if view is not None:
                views.append(view)

        queries = [d for d in decls if d.data == "query"]
        if not queries:
            self.error(self.end_position(), "no query declared")
            return None
        for extra in queries[1:]:
            self.error(extra, "exactly one query per file")
        query = self.query(schema, queries[0])

        if self.failed or query is None:
            return None
        return Problem(schema=schema, views=tuple(views), query=query)

    def relations(self, decls: list[Tree]) -> list[RelationDecl]:
        result: list[RelationDecl] = []
        for decl in decls:
            name, *coldecls = decl.children
            if any(r.name == str(name) for r in result):
                self.error(name, f"relation {name} declared twice")
                continue
            columns: list[tuple[str, Sort]] = []
            ok = True
            for coldecl in coldecls:
                column, sort_name = coldecl.children
                if any(c == str(column) for c, _ in columns):
                    self.error(column, f"column {column} declared twice in relation {name}")
                    ok = False
                    continue
                try:
                    sort = Sort(str(sort_name))
                except ValueError:
                    self.error(sort_name, f"unknown sort '{sort_name}' (expected one of: {_SORT_NAMES})")
                    ok = False
                    continue
                columns.append((str(column), sort))
            if ok:
                result.append(RelationDecl(str(name), tuple(columns)))
        return result

    def view(self, schema: Schema, decl: Tree) -> Optional[ViewDef]:
        name, colrefs, pred, source = decl.children
        if not schema.has_relation(str(source)):
            self.error(source, f"unknown relation {source}")
            return None
        scope = [schema.relation(str(source))]
        errors_before = len(self.diagnostics)
        projection = self.projection(schema, scope, colrefs, single=True)
        predicate = self.predicate(schema, scope, pred, single=True)
        if any(d.severity == Severity.ERROR for d in self.diagnostics[errors_before:]):
            return None
        return ViewDef(
            name=str(name),
            source=schema.index_of(str(source)),
            relation=str(source),
            projection=projection,
            predicate=predicate,
        )

    def query(self, schema: Schema, decl: Tree) -> Optional[QueryDef]:
        colrefs, pred, *sources = decl.children
        names: list[str] = []
        for source in sources:
            if not schema.has_relation(str(source)):
                self.error(source, f"unknown relation {source}")
            elif str(source) in names:
                self.error(source, f"self join not supported: relation {source} listed twice")
            else:
                names.append(str(source))
        missing = [r.name for r in schema.relations if r.name not in names]
        if missing:
            self.error(decl, f"query must range over every declared relation (missing: {', '.join(missing)})")
        scope = [schema.relation(n) for n in names]
        errors_before = len(self.diagnostics)
        projection = self.projection(schema, scope, colrefs, single=False)
        predicate = self.predicate(schema, scope, pred, single=False)
        if any(d.severity == Severity.ERROR for d in self.diagnostics[errors_before:]) or missing:
            return None
        return QueryDef(projection=projection, predicate=predicate, relations=tuple(names))

    # Column references

    def colref(
        self, schema: Schema, scope: list[RelationDecl], node: Tree, single: bool
    ) -> Optional[ColumnRef]:
        if len(node.children) == 2:
            rel_name, column = map(str, node.children)
            if not schema.has_relation(rel_name):
                self.error(node, f"unknown relation {rel_name}")
                return None
            if all(r.name != rel_name for r in scope):
                if single:
                    self.error(node, "view must reference a single relation")
                else:
                    self.error(node, f"relation {rel_name} is not in the query's from list")
                return None
            if not schema.relation(rel_name).has_column(column):
                self.error(node, f"unknown column {rel_name}.{column}")
                return None
            return ColumnRef(rel_name, column)

        column = str(node.children[0])
        candidates = [r for r in scope if r.has_column(column)]
        if not candidates:
            self.error(node, f"unknown column {column}")
            return None
        if len(candidates) > 1:
            owners = ", ".join(r.name for r in candidates)
            self.error(node, f"ambiguous column {column} (in {owners}); qualify it")
            return None
        return ColumnRef(candidates[0].name, column)

    def projection(
        self, schema: Schema, scope: list[RelationDecl], node: Tree, single: bool
    ) -> tuple[ColumnRef, ...]:
        refs: list[ColumnRef] = []
        for child in node.children:
            ref = self.colref(schema, scope, child, single)
            if ref is None:
                continue
            if ref in refs:
                self.warning(child, f"column {ref} listed twice in projection")
            refs.append(ref)
        return tuple(refs)

    # Predicates

    _COMPARISONS = {"eq", "ne", "lt", "le", "gt", "ge"}

    def predicate(self, schema: Schema, scope: list[RelationDecl], node, single: bool) -> Predicate:
        if isinstance(node, Token):
            # a bare TRUE/FALSE token inlined by the grammar
            return TRUE if node.type == "TRUE" else FALSE
        kind = node.data
        if kind == "true_":
            return TRUE
        if kind == "false_":
            return FALSE
        if kind == "not_":
            return Not(self.predicate(schema, scope, node.children[0], single))
        if kind == "conj":
            return And(tuple(self.predicate(schema, scope, c, single) for c in node.children))
        if kind == "disj":
            return Or(tuple(self.predicate(schema, scope, c, single) for c in node.children))
        if kind in self._COMPARISONS:
            return self.comparison(schema, scope, node, single)
        raise ValueError(f"unexpected node {kind}")

    def term(self, schema: Schema, scope, node, single: bool) -> Optional[tuple[Term, Sort]]:
        if isinstance(node, Tree) and node.data == "colref":
            ref = self.colref(schema, scope, node, single)
            return None if ref is None else (ref, schema.sort_of(ref))
        kind = node.data
        token = node.children[0]
        if kind == "int_lit":
            return Value(Sort.INT, int(token)), Sort.INT
        if kind == "str_lit":
            return Value(Sort.STRING, re.sub(r"\\(.)", r"\1", str(token)[1:-1], flags=re.S)), Sort.STRING
        if kind == "fresh_lit":
            return Value(Sort.UNINTERPRETED, int(str(token)[1:])), Sort.UNINTERPRETED
        if kind == "bool_lit":
            return Value(Sort.BOOL, str(token) == "true"), Sort.BOOL
        raise ValueError(f"unexpected term {kind}")

    def comparison(self, schema: Schema, scope, node: Tree, single: bool) -> Predicate:
        left = self.term(schema, scope, node.children[0], single)
        right = self.term(schema, scope, node.children[1], single)
        if left is None or right is None:
            return TRUE
        (lterm, lsort), (rterm, rsort) = left, right
        if lsort != rsort:
            self.error(node, f"sort mismatch: cannot compare {lsort.value} with {rsort.value}")
            return TRUE
        kind = node.data
        if kind in {"lt", "le", "gt", "ge"} and lsort != Sort.INT:
            self.error(node, f"order comparison needs int operands, got {lsort.value}")
            return TRUE
        if kind == "eq":
            return Atom(Op.EQ, lterm, rterm)
        if kind == "ne":
            return Not(Atom(Op.EQ, lterm, rterm))
        if kind == "lt":
            return Atom(Op.LT, lterm, rterm)
        if kind == "le":
            return Atom(Op.LE, lterm, rterm)
        if kind == "gt":
            return Atom(Op.LT, rterm, lterm)
        return Atom(Op.LE, rterm, lterm)


def _syntax_diagnostic(err: UnexpectedInput, builder: _Builder) -> ParseDiagnostic:
    if isinstance(err, UnexpectedEOF) or getattr(err, "line", -1) in (None, -1):
        line, column = builder.end_position()
        message = "unexpected end of input"
    elif isinstance(err, UnexpectedToken):
        line, column = err.line, err.column
        expected = ", ".join(sorted(err.expected)) if err.expected else "nothing"
        message = f"unexpected {err.token!r}, expected one of: {expected}"
    elif isinstance(err, UnexpectedCharacters):
        line, column = err.line, err.column
        message = f"unexpected character {err.char!r}"
    else:
        line, column = err.line, err.column
        message = "syntax error"
    return ParseDiagnostic(Severity.ERROR, message, line, column)


def parse_with_diagnostics(src: SourceFile) -> tuple[Optional[Problem], list[ParseDiagnostic]]:
    builder = _Builder(src.text)
    try:
        tree = _parser.parse(src.text)
    except UnexpectedInput as err:
        return None, [_syntax_diagnostic(err, builder)]
    problem = builder.build(tree)
    return problem, builder.diagnostics


def parse_problem(src: SourceFile) -> Problem:
    """Parse and check a problem file; raises ParseError with positioned diagnostics."""
    problem, diagnostics = parse_with_diagnostics(src)
    if problem is None:
        raise ParseError(diagnostics)
    for diagnostic in diagnostics:
        logger.warning(diagnostic.render(src.path))
    logger.info(
        f"Parsed {src.path or '<input>'}: {problem.schema.m} relation(s), {len(problem.views)} view(s)"
    )
    return problem
