"""Surface syntax for Leavitt path algebra expressions.

Grammar (juxtaposition is multiplication, ``*`` marks a ghost edge)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := scalar? factor+
    factor := IDENT '*'? | '(' expr ')'
    scalar := INT ('/' INT)?
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import ExprSyntaxError, InputError
from .graph import Graph

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/()]))")


@dataclass(frozen=True)
class Gen:
    name: str
    ghost: bool = False
    pos: int = 0


@dataclass(frozen=True)
class ScalarMul:
    scalar: Fraction
    node: "Node"


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: tuple["Node", ...]


Node = Union[Gen, ScalarMul, Product, Sum]


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, graph: Optional[Graph]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.graph = graph

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Node:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return node

    def expr(self) -> Node:
        terms: list[Node] = []
        negate = False
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            negate = True
        while True:
            t = self.term()
            terms.append(ScalarMul(Fraction(-1), t) if negate else t)
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                negate = val == "-"
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        scalar = None
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            num = int(val)
            kind, val, _ = self.peek()
            if kind == "op" and val == "/":
                self.take()
                kind, val, dpos = self.take()
                if kind != "int":
                    raise ExprSyntaxError("expected denominator", dpos)
                if int(val) == 0:
                    raise ExprSyntaxError("zero denominator", dpos)
                scalar = Fraction(num, int(val))
            else:
                scalar = Fraction(num)
        factors = []
        while True:
            kind, val, fpos = self.peek()
            if kind == "ident" or (kind == "op" and val == "("):
                factors.append(self.factor())
            else:
                break
        if not factors:
            kind, val, fpos = self.peek()
            raise ExprSyntaxError(f"expected a generator, found {val or 'end of input'!r}", fpos)
        node = factors[0] if len(factors) == 1 else Product(tuple(factors))
        return node if scalar is None else ScalarMul(scalar, node)

    def factor(self) -> Node:
        kind, val, pos = self.take()
        if kind == "op":  # "("
            node = self.expr()
            self.expect_op(")")
            return node
        ghost = False
        nkind, nval, _ = self.peek()
        if nkind == "op" and nval == "*":
            self.take()
            ghost = True
        if self.graph is not None:
            if self.graph.has_vertex(val):
                if ghost:
                    raise ExprSyntaxError(f"ghost marker on vertex {val!r}", pos)
            elif not self.graph.has_edge(val):
                raise ExprSyntaxError(f"unknown identifier {val!r}", pos)
        return Gen(val, ghost, pos)


def parse_expr(text: str, graph: Optional[Graph] = None) -> Node:
    """Parse an expression; with ``graph`` given, identifiers are resolved too."""
    return _Parser(text, graph).parse()


def evaluate(node: Node, ring, images: Optional[Mapping[str, object]] = None):
    """Fold an AST into a ring element.

    Generators are looked up in ``images`` (``v``, ``e``, ``e*``) when given,
    otherwise taken from ``ring.generators()``; scalars are coerced into the
    ring's field.
    """
    gens = images if images is not None else ring.generators()

    def go(n: Node):
        if isinstance(n, Gen):
            key = n.name + "*" if n.ghost else n.name
            if key not in gens:
                if n.ghost and n.name in gens:
                    raise InputError(f"ghost marker on vertex {n.name!r}")
                raise InputError(f"unknown identifier {n.name!r}")
            return gens[key]
        if isinstance(n, ScalarMul):
            try:
                c = ring.field(n.scalar)
            except ZeroDivisionError as exc:
                raise InputError(str(exc)) from None
            return go(n.node) * c
        if isinstance(n, Product):
            out = go(n.factors[0])
            for f in n.factors[1:]:
                out = out * go(f)
            return out
        out = go(n.terms[0])
        for t in n.terms[1:]:
            out = out + go(t)
        return out

    return go(node)


def eval_expression(ring, text: str):
    return evaluate(parse_expr(text, ring.graph), ring)


def format_ast(node: Node) -> str:
    """Print an AST so that :func:`parse_expr` reads it back unchanged in value."""
    if isinstance(node, Gen):
        return node.name + ("*" if node.ghost else "")
    if isinstance(node, ScalarMul):
        c = node.scalar
        body = f"{abs(c)} ({format_ast(node.node)})"
        return f"(- {body})" if c < 0 else body
    if isinstance(node, Product):
        return " ".join(
            format_ast(f) if isinstance(f, Gen) else f"({format_ast(f)})" for f in node.factors
        )
    return " + ".join(f"({format_ast(t)})" for t in node.terms)
