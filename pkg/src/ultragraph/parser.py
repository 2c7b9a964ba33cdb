"""Text front end: the ultragraph description language and matrix imports.

Grammar (comments run from ``#`` to end of line)::

    file     = "ultragraph" [name] "{" clause* "}"
    clause   = "vertices" ":" id ("," id)* ";"
             | "blocks"   ":" id ("," id)* ";"
             | "edge" id ["[" mult "]"] ":" vertex "->" setexpr ";"
    mult     = integer | "inf"
    vertex   = id | id "[" integer "]"
    setexpr  = term (("+" | "-") term)*
    term     = id | "{" [vertex ("," vertex)*] "}" | "(" setexpr ")"

``+`` is union and ``-`` is set difference, evaluated left to right.  A
bare identifier in a set expression names a block; braces hold explicit
vertex lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import (
    INF,
    Edge,
    Infinite,
    Ultragraph,
    Vertex,
    VertexSet,
    VertexUniverse,
)


@dataclass(frozen=True)
class SourceFile:
    text: str
    origin: str = "<string>"

    @classmethod
    def load(cls, path: str) -> SourceFile:
        with open(path, encoding="utf-8") as fh:
            return cls(fh.read(), path)


class ParseError(ValueError):
    """Syntax or semantic error, carrying the 1-based source position."""

    def __init__(self, line: int, column: int, message: str,
                 expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.message = message
        self.expected = expected
        suffix = ""
        if expected:
            suffix = " (expected {})".format(" or ".join(expected))
        super().__init__(f"{line}:{column}: {message}{suffix}")


_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r\n]+|\#[^\n]*)
      | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<int>\d+)
      | (?P<arrow>->)
      | (?P<punct>[{}\[\]():;,+-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "id", "int", "arrow", "punct", "eof"
    value: str
    line: int
    column: int


def _tokenize(src: SourceFile) -> list[_Token]:
    out = []
    pos, line, col = 0, 1, 1
    text = src.text
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            out.append(_Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    out.append(_Token("eof", "", line, col))
    return out


@dataclass
class _Parser:
    tokens: list[_Token]
    pos: int = 0
    universe: VertexUniverse | None = None
    named: list[str] = field(default_factory=list)
    blocks: list[str] = field(default_factory=list)

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, *expected: str) -> ParseError:
        tok = self.peek()
        return ParseError(tok.line, tok.column, message, expected)

    def expect(self, kind: str, value: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value if value is not None else kind
            got = tok.value or "end of input"
            raise self.fail(f"unexpected {got!r}", repr(want))
        return self.next()

    def accept(self, kind: str, value: str | None = None) -> _Token | None:
        tok = self.peek()
        if tok.kind == kind and (value is None or tok.value == value):
            return self.next()
        return None

    # -- clauses ---------------------------------------------------------

    def parse_file(self) -> Ultragraph:
        self.expect("id", "ultragraph")
        name = ""
        tok = self.accept("id")
        if tok is not None:
            name = tok.value
        self.expect("punct", "{")

        edge_clauses: list[tuple[_Token, int | Infinite, _Token, list]] = []
        while not self.accept("punct", "}"):
            tok = self.peek()
            if tok.kind != "id":
                raise self.fail("expected a clause",
                                "'vertices'", "'blocks'", "'edge'", "'}'")
            if tok.value == "vertices":
                self.next()
                self.expect("punct", ":")
                self.named.extend(self.id_list())
            elif tok.value == "blocks":
                self.next()
                self.expect("punct", ":")
                self.blocks.extend(self.id_list())
            elif tok.value == "edge":
                self.next()
                clause = self.edge_clause()
                if any(c[0].value == clause[0].value for c in edge_clauses):
                    raise ParseError(clause[0].line, clause[0].column,
                                     f"duplicate edge id {clause[0].value!r}")
                edge_clauses.append(clause)
            else:
                raise self.fail(f"unknown clause {tok.value!r}",
                                "'vertices'", "'blocks'", "'edge'")
            self.expect("punct", ";")

        self.expect("eof")
        try:
            self.universe = VertexUniverse(tuple(self.named), tuple(self.blocks))
        except ValueError as exc:
            raise ParseError(1, 1, str(exc)) from exc

        edges = []
        for id_tok, mult, src_tok, expr in edge_clauses:
            source = self.resolve_vertex(*src_tok)
            rng = self.eval_expr(expr)
            if not rng:
                raise ParseError(id_tok.line, id_tok.column,
                                 f"edge {id_tok.value!r} has empty range")
            edges.append(Edge(id_tok.value, source, rng, mult))
        try:
            return Ultragraph(self.universe, tuple(edges), name)
        except ValueError as exc:
            raise ParseError(1, 1, str(exc)) from exc

    def id_list(self) -> list[str]:
        out = [self.expect("id").value]
        while self.accept("punct", ","):
            out.append(self.expect("id").value)
        return out

    def edge_clause(self):
        id_tok = self.expect("id")
        mult: int | Infinite = 1
        if self.accept("punct", "["):
            tok = self.peek()
            if self.accept("id", "inf"):
                mult = INF
            elif tok.kind == "int":
                mult = int(self.next().value)
                if mult < 1:
                    raise ParseError(tok.line, tok.column,
                                     "multiplicity must be at least 1")
            else:
                raise self.fail("bad multiplicity", "integer", "'inf'")
            self.expect("punct", "]")
        self.expect("punct", ":")
        src = self.vertex_ref()
        self.expect("arrow")
        expr = self.parse_expr()
        return id_tok, mult, src, expr

    def vertex_ref(self) -> tuple[_Token, int | None]:
        tok = self.expect("id")
        index = None
        if self.accept("punct", "["):
            itok = self.expect("int")
            index = int(itok.value)
            self.expect("punct", "]")
        return tok, index

    # -- set expressions -------------------------------------------------
    # Expressions are parsed into small trees and evaluated only after the
    # universe is known, so clause order in the file does not matter.

    def parse_expr(self):
        node = self.parse_term()
        while True:
            if self.accept("punct", "+"):
                node = ("+", node, self.parse_term())
            elif self.accept("punct", "-"):
                node = ("-", node, self.parse_term())
            else:
                return node

    def parse_term(self):
        if self.accept("punct", "("):
            node = self.parse_expr()
            self.expect("punct", ")")
            return node
        if self.accept("punct", "{"):
            refs = []
            if not self.accept("punct", "}"):
                refs.append(self.vertex_ref())
                while self.accept("punct", ","):
                    refs.append(self.vertex_ref())
                self.expect("punct", "}")
            return ("set", refs)
        tok = self.peek()
        if tok.kind == "id":
            return ("block", self.next())
        raise self.fail("expected a set expression",
                        "'{'", "'('", "block name")

    def resolve_vertex(self, tok: _Token, index: int | None) -> Vertex:
        assert self.universe is not None
        if index is None:
            if tok.value in self.universe.named:
                return self.universe.vertex(tok.value)
            if tok.value in self.universe.blocks:
                raise ParseError(tok.line, tok.column,
                                 f"block {tok.value!r} used without an index")
            raise ParseError(tok.line, tok.column,
                             f"unknown vertex {tok.value!r}")
        if tok.value not in self.universe.blocks:
            raise ParseError(tok.line, tok.column,
                             f"unknown block {tok.value!r}")
        return self.universe.witness(tok.value, index)

    def eval_expr(self, node) -> VertexSet:
        assert self.universe is not None
        op = node[0]
        if op == "set":
            return self.universe.finite_set(
                self.resolve_vertex(*ref) for ref in node[1]
            )
        if op == "block":
            tok = node[1]
            if tok.value not in self.universe.blocks:
                raise ParseError(tok.line, tok.column,
                                 f"unknown block {tok.value!r}")
            return self.universe.block_set(tok.value)
        lhs = self.eval_expr(node[1])
        rhs = self.eval_expr(node[2])
        return lhs | rhs if op == "+" else lhs - rhs


def parse_ultragraph(src: SourceFile | str) -> Ultragraph:
    if isinstance(src, str):
        src = SourceFile(src)
    return _Parser(_tokenize(src)).parse_file()


# -- canonical emission -------------------------------------------------------

def _render_set(s: VertexSet) -> str:
    parts = list(s.sorted_blocks())
    expr = " + ".join(parts)
    removed = [f"{b}[{k}]" for b in s.sorted_blocks()
               for k in s.removed_indices(b)]
    if removed:
        expr += " - {" + ", ".join(removed) + "}"
    extra = ", ".join(str(v) for v in s.sorted_extra())
    if not expr:
        return "{" + extra + "}"
    if extra:
        expr += " + {" + extra + "}"
    return expr


def pretty_print(g: Ultragraph) -> str:
    """Emit DSL text that parses back to an equal ultragraph."""
    lines = ["ultragraph {}{{".format(g.name + " " if g.name else "")]
    if g.universe.named:
        lines.append("  vertices: " + ", ".join(g.universe.named) + ";")
    if g.universe.blocks:
        lines.append("  blocks: " + ", ".join(g.universe.blocks) + ";")
    for e in g.edges:
        if isinstance(e.multiplicity, Infinite):
            mult = "[inf]"
        elif e.multiplicity != 1:
            mult = f"[{e.multiplicity}]"
        else:
            mult = ""
        lines.append("  edge {}{}: {} -> {};".format(
            e.id, mult, e.source, _render_set(e.range)))
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- classical presentations --------------------------------------------------

def import_digraph(
    vertices: list[str],
    edges: list[tuple[str, str, str]],
    name: str = "",
) -> Ultragraph:
    """Ordinary directed graph: every range is a single vertex.

    ``edges`` lists (edge id, source label, target label).
    """
    universe = VertexUniverse(tuple(vertices), ())
    built = tuple(
        Edge(eid, universe.vertex(src),
             universe.finite_set([universe.vertex(dst)]))
        for eid, src, dst in edges
    )
    return Ultragraph(universe, built, name)


def parse_matrix(text: str) -> list[list[int]]:
    """Rows of 0/1 separated by spaces, one row per line."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        row = []
        for col, tok in enumerate(stripped.split(), start=1):
            if tok not in ("0", "1"):
                raise ParseError(lineno, col, f"matrix entry {tok!r} is not 0 or 1")
            row.append(int(tok))
        rows.append((lineno, row))
    if not rows:
        raise ParseError(1, 1, "empty matrix")
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise ParseError(lineno, 1, "ragged matrix row")
    return [row for _, row in rows]


def import_exel_laca(matrix: list[list[int]], name: str = "") -> Ultragraph:
    """Square {0,1} matrix A over indices 1..n: vertex v_i per index, edge
    e_i per row with source v_i and range {v_j : A(i,j) = 1}.

    Zero rows are rejected, a range must be nonempty.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if any(x not in (0, 1) for row in matrix for x in row):
        raise ValueError("matrix entries must be 0 or 1")
    universe = VertexUniverse(tuple(f"v{i + 1}" for i in range(n)), ())
    edges = []
    for i, row in enumerate(matrix):
        if not any(row):
            raise ValueError(f"row {i + 1} of the matrix is zero")
        rng = universe.finite_set(
            universe.vertex(f"v{j + 1}") for j, x in enumerate(row) if x
        )
        edges.append(Edge(f"e{i + 1}", universe.vertex(f"v{i + 1}"), rng))
    return Ultragraph(universe, tuple(edges), name)
