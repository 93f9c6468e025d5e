"""The partial skew groupoid ring D(X) x| G, our model of L_K(E).

An element is a finite sum of homogeneous terms ``a_s delta_s`` keyed by
S-forms, with each coefficient ``a_s`` in D_s = 1_s D(X). Degrees outside S
only ever carry the zero coefficient and are never stored.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Mapping, Optional

from .cylinder import CylFunction, PathSpace
from .errors import DeadDegreeError, InputError
from .graph import Graph, Path
from .groupoid import FreePathGroupoid, SForm
from .report import Report
from .scalars import QQ, Field


class SkewRing:
    def __init__(self, graph: Graph, field: Field = QQ):
        self.graph = graph
        self.field = field
        self.space = PathSpace(graph, field)
        self.groupoid: FreePathGroupoid = self.space.groupoid
        self._units: dict[SForm, CylFunction] = {}

    def __eq__(self, other):
        return isinstance(other, SkewRing) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def __repr__(self):
        return f"SkewRing({self.graph!r}, {self.field.name})"

    def unit(self, s: SForm) -> CylFunction:
        if s not in self._units:
            self._units[s] = self.space.one(s)
        return self._units[s]

    # construction

    def element(self, terms: Mapping[SForm, CylFunction]) -> RingElement:
        clean = {}
        for s, f in terms.items():
            if not f:
                continue
            if f.space != self.space:
                raise ValueError("coefficient from a different graph or field")
            if f * self.unit(s) != f:
                raise ValueError(f"coefficient {f.render()} is not in D_{s}")
            clean[s] = f
        return RingElement(self, clean)

    def zero(self) -> RingElement:
        return RingElement(self, {})

    def monomial(self, s: SForm, f: Optional[CylFunction] = None) -> RingElement:
        """``f delta_s``; ``f`` defaults to the unit ``1_s``."""
        return self.element({s: self.unit(s) if f is None else f})

    def gen_vertex(self, v: str) -> RingElement:
        if not self.graph.has_vertex(v):
            raise InputError(f"unknown vertex {v!r}")
        return self.monomial(self.groupoid.sform(v))

    def gen_edge(self, e: str) -> RingElement:
        if not self.graph.has_edge(e):
            raise InputError(f"unknown edge {e!r}")
        return self.monomial(self.groupoid.sform(e))

    def gen_ghost(self, e: str) -> RingElement:
        if not self.graph.has_edge(e):
            raise InputError(f"unknown edge {e!r}")
        return self.monomial(self.groupoid.sform(e + "*"))

    def generators(self) -> dict[str, RingElement]:
        """Every LPA generator by name: ``v``, ``e`` and ``e*``."""
        gens = {v: self.gen_vertex(v) for v in self.graph.vertices}
        for e in self.graph.edge_ids:
            gens[e] = self.gen_edge(e)
            gens[e + "*"] = self.gen_ghost(e)
        return gens

    # arithmetic

    def _check(self, x: RingElement, y: RingElement) -> None:
        if x.ring != self or y.ring != self:
            raise ValueError("ring elements over different graphs or fields")

    def add(self, x: RingElement, y: RingElement) -> RingElement:
        self._check(x, y)
        terms = dict(x.terms)
        for s, f in y.terms.items():
            terms[s] = terms[s] + f if s in terms else f
        return RingElement(self, {s: f for s, f in terms.items() if f})

    def scalar_mul(self, c, x: RingElement) -> RingElement:
        c = self.field(c)
        if not c:
            return self.zero()
        return RingElement(self, {s: f.scale(c) for s, f in x.terms.items()})

    def coefficient(self, g: SForm, a: CylFunction, h: SForm, b: CylFunction) -> CylFunction:
        """``alpha_g(alpha_{g^-1}(a) b)``, the coefficient of ``a delta_g * b delta_h``."""
        alpha = self.space.alpha
        return alpha(g, alpha(g.inverse(), a) * b)

    def mul(self, x: RingElement, y: RingElement) -> RingElement:
        self._check(x, y)
        G = self.groupoid
        acc: dict[SForm, CylFunction] = {}
        for g, a in x.terms.items():
            for h, b in y.terms.items():
                if g.range != h.source:
                    continue
                c = self.coefficient(g, a, h, b)
                gh = G.classify(G.mul(g.element, h.element))
                if gh is None:
                    if c:
                        raise DeadDegreeError(f"nonzero coefficient {c.render()} at {g} * {h}")
                    continue
                acc[gh] = acc[gh] + c if gh in acc else c
        return RingElement(self, {s: f for s, f in sorted(acc.items(), key=lambda kv: kv[0].sort_key()) if f})

    def eq(self, x: RingElement, y: RingElement) -> bool:
        return x == y

    def verify_relations(self) -> Report:
        return check_lpa_relations(self.graph, self.generators(), self, "relations")


class RingElement:
    """A finite sum ``sum_s a_s delta_s`` with canonical coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SkewRing, terms: dict[SForm, CylFunction]):
        self.ring = ring
        self.terms = dict(sorted(terms.items(), key=lambda kv: kv[0].sort_key()))

    def __add__(self, other: RingElement) -> RingElement:
        return self.ring.add(self, other)

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, {s: -f for s, f in self.terms.items()})

    def __sub__(self, other: RingElement) -> RingElement:
        return self.ring.add(self, -other)

    def __mul__(self, other) -> RingElement:
        if isinstance(other, RingElement):
            return self.ring.mul(self, other)
        return self.ring.scalar_mul(other, self)

    def __rmul__(self, c) -> RingElement:
        return self.ring.scalar_mul(c, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> list[SForm]:
        return list(self.terms)

    def component(self, s: SForm) -> RingElement:
        return RingElement(self.ring, {s: self.terms[s]} if s in self.terms else {})

    def is_homogeneous(self, s: Optional[SForm] = None) -> bool:
        if len(self.terms) != 1:
            return not self.terms
        return s is None or s in self.terms

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({f.render()}) δ_[{s}]" for s, f in self.terms.items())

    def to_expr(self) -> str:
        """A generator expression that parses back to this element.

        ``c 1_{head t} delta_{head tail*}`` is written ``c head t t* tail*``.
        """
        field = self.ring.field
        parts: list[tuple[bool, str]] = []
        for s, f in self.terms.items():
            for key, c in f.terms.items():
                t = key.edges[s.head.length:] if key.has_prefix(s.head) else ()
                letters = list(s.head.edges) + list(t)
                letters += [e + "*" for e in reversed(t)]
                letters += [e + "*" for e in reversed(s.tail.edges)]
                word = " ".join(letters) if letters else s.head.start
                neg = field.is_negative(c)
                mag = -c if neg else c
                text = word if mag == field.one else f"{field.format(mag)} {word}"
                parts.append((neg, text))
        if not parts:
            return f"0 {self.ring.graph.vertices[0]}"
        out = ("- " if parts[0][0] else "") + parts[0][1]
        for neg, text in parts[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def to_json(self) -> str:
        fmt = self.ring.field.format
        rows = [
            {"degree": str(s), "kind": s.kind, "coefficient": {str(p): fmt(c) for p, c in f.terms.items()}}
            for s, f in self.terms.items()
        ]
        return "\n".join(json.dumps(r, sort_keys=True, ensure_ascii=False) for r in rows)

    def __repr__(self) -> str:
        return f"RingElement({self.render()})"


def check_lpa_relations(
    graph: Graph,
    images: Mapping[str, RingElement],
    ring: SkewRing,
    name: str = "relations",
) -> Report:
    """Check the five Leavitt path algebra relations of ``graph`` on ``images``.

    ``images`` maps generator names (``v``, ``e``, ``e*``) to elements of
    ``ring``, which may belong to a different graph.
    """
    report = Report(name)
    zero = ring.zero()
    V, E = graph.vertices, graph.edges

    def prod(*names: str) -> RingElement:
        out = images[names[0]]
        for n in names[1:]:
            out = out * images[n]
        return out

    for v in V:
        report.check(prod(v, v) == images[v], f"(i) {v} {v} != {v}")
        for w in V:
            if w != v:
                report.check(not prod(v, w), f"(i) {v} {w} != 0")
    for e in E:
        x, xs = e.id, e.id + "*"
        report.check(prod(e.source, x) == images[x], f"(ii) s({x}) {x} != {x}")
        report.check(prod(x, e.range) == images[x], f"(ii) {x} r({x}) != {x}")
        report.check(prod(e.range, xs) == images[xs], f"(iii) r({x}) {xs} != {xs}")
        report.check(prod(xs, e.source) == images[xs], f"(iii) {xs} s({x}) != {xs}")
        for f in E:
            got = prod(xs, f.id)
            if f.id == x:
                report.check(got == images[e.range], lambda: f"(iv) {xs} {x} = {got.render()} != r({x})")
            else:
                report.check(not got, lambda: f"(iv) {xs} {f.id} = {got.render()} != 0")
    for v in V:
        out = graph.out_edges(v)
        if not out:
            continue
        total = zero
        for e in out:
            total = total + prod(e.id, e.id + "*")
        report.check(total == images[v], lambda: f"(v) sum of e e* over s(e)={v} is {total.render()}, not {v}")
    return report
