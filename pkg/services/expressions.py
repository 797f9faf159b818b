"""Text syntax for elements of L_R(E).

    expr := ['-'] term (('+'|'-') term)*
    term := int | [int '*'] atom ('*' atom)*
    atom := 'p(' vid ')' | 's(' path ')' | 'sx(' path ')' | '(' expr ')'

`sx(...)` is the ghost path and whitespace is insignificant. A term that is a
bare integer c stands for c * 1 with 1 = sum of the vertex idempotents, so `0`
is the zero element; a leading '-' negates the first term.
Dotted paths are split against the graph's edge ids by longest match.

format_element prints the normal form in term order; parse_element reads it
back to the same element.
"""

from __future__ import annotations

import re
from typing import Iterator, List, NamedTuple, Tuple, Union

from services import lpa
from services.lpa import Element, Key
from utils.errors import ExpressionError, GraphError
from utils.graph import Graph
from utils.rings import RingSpec

_TOKENS = {
    "gen": r"(?:sx|s|p)\s*\(\s*[A-Za-z0-9_#']+(?:\s*\.\s*[A-Za-z0-9_#']+)*\s*\)",
    "num": r"\d+",
    "lpar": r"\(",
    "rpar": r"\)",
    "plus": r"\+",
    "minus": r"-",
    "mul": r"\*",
    "skip": r"\s+",
    "error": r".",
}
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{text})" for name, text in _TOKENS.items()))
_GEN_RE = re.compile(r"(sx|s|p)\s*\((.*)\)", re.S)


class Token(NamedTuple):
    kind: str
    value: Union[str, int]
    where: Tuple[int, int]

    @property
    def column(self) -> int:
        return self.where[0] + 1


def tokenize(text: str) -> Iterator[Token]:
    for mo in _TOKEN_RE.finditer(text):
        kind = str(mo.lastgroup)
        value = mo.group()
        where = mo.start(), mo.end()
        if kind == "skip":
            continue
        if kind == "error":
            raise ExpressionError(f"unexpected character '{value}'", where[0] + 1)
        if kind == "num":
            yield Token(kind, int(value), where)
        else:
            yield Token(kind, value, where)


class _Parser:
    def __init__(self, graph: Graph, ring: RingSpec, text: str) -> None:
        self.graph = graph
        self.ring = ring
        self.text = text
        self.tokens: List[Token] = list(tokenize(text))
        self.pos = 0

    def peek(self) -> Token:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return Token("end", "", (len(self.text), len(self.text)))

    def take(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "end" else f"'{tok.value}'"
            raise ExpressionError(f"expected {kind}, found {found}", tok.column)
        self.pos += 1
        return tok

    def parse(self) -> Element:
        if not self.tokens:
            raise ExpressionError("empty expression", 1)
        x = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionError(f"unexpected '{tok.value}'", tok.column)
        return x

    def expr(self) -> Element:
        negate = False
        if self.peek().kind == "minus":
            self.pos += 1
            negate = True
        x = self.term()
        if negate:
            x = -x
        while self.peek().kind in ("plus", "minus"):
            op = self.take(self.peek().kind)
            y = self.term()
            x = x + y if op.kind == "plus" else x - y
        return x

    def term(self) -> Element:
        tok = self.peek()
        if tok.kind == "num":
            self.pos += 1
            c = int(tok.value)
            if self.peek().kind != "mul":
                return lpa.scale(c, lpa.unit(self.graph, self.ring))
            self.pos += 1
            x = lpa.scale(c, self.atom())
        else:
            x = self.atom()
        while self.peek().kind == "mul":
            self.pos += 1
            x = x * self.atom()
        return x

    def atom(self) -> Element:
        tok = self.peek()
        if tok.kind == "lpar":
            self.pos += 1
            x = self.expr()
            self.take("rpar")
            return x
        if tok.kind == "gen":
            self.pos += 1
            return self.generator(tok)
        found = "end of input" if tok.kind == "end" else f"'{tok.value}'"
        raise ExpressionError(f"expected a generator or '(', found {found}", tok.column)

    def generator(self, tok: Token) -> Element:
        kind, arg = _GEN_RE.fullmatch(str(tok.value)).groups()
        arg = "".join(arg.split())
        g = self.graph
        try:
            if kind == "p":
                if not g.has_vertex(arg):
                    raise GraphError(f"unknown vertex '{arg}' in graph {g.name}")
                return lpa.vertex(g, self.ring, arg)
            path = g.parse_path(arg)
        except GraphError as e:
            raise ExpressionError(str(e), tok.column) from None
        if kind == "s":
            return lpa.path_element(g, self.ring, path)
        return lpa.ghost_element(g, self.ring, path)


def parse_element(graph: Graph, ring: RingSpec, text: str) -> Element:
    """Parse `text` into a normal-form element of L_ring(graph)."""
    return _Parser(graph, ring, text).parse()


def format_monomial(key: Key) -> str:
    mu, nu = key
    if mu.is_vertex and nu.is_vertex:
        return f"p({mu.rng})"
    if nu.is_vertex:
        return f"s({mu})"
    if mu.is_vertex:
        return f"sx({nu})"
    return f"s({mu})*sx({nu})"


def format_element(x: Element) -> str:
    if x.is_zero():
        return "0"
    parts: List[str] = []
    for key, c in x.items():
        c = x.ring.signed(c)
        body = format_monomial(key)
        mag = abs(c)
        text = body if mag == 1 else f"{mag}*{body}"
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)
