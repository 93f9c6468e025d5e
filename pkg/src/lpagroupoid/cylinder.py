"""The commutative algebra D(X) of cylinder functions on the path space.

X is the set of finite paths ending at a sink, the sinks themselves, and
the infinite paths. A function in D(X) is a finite combination of
characteristic functions ``1_p`` of cylinders ``X_p`` (all points starting
with the finite path ``p``; for a vertex, all points starting there).

Nothing infinite is ever materialized. Two cylinders are either nested
(one path is a prefix of the other) or disjoint, and for a non-sink vertex
``X_v`` is the disjoint union of ``X_e`` over the edges leaving ``v``. The
canonical form expands every key to a common depth, sums, then merges
complete sibling families with equal coefficients back into their parent.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Union

from .errors import DomainError
from .graph import Graph, Path
from .groupoid import FreePathGroupoid, SForm
from .report import Report
from .scalars import QQ, Field, Scalar


def key_order(p: Path):
    return (len(p.edges), p.edges, p.start)


@dataclass(frozen=True)
class SinkPath:
    """A point of X: a finite path (possibly a vertex) ending at a sink."""

    path: Path


@dataclass(frozen=True)
class Truncation:
    """All points of X that begin with ``path`` (a stand-in for infinite ones)."""

    path: Path


BoundaryPoint = Union[SinkPath, Truncation]


class PathSpace:
    """Cylinder calculus for one graph over one coefficient field."""

    def __init__(self, graph: Graph, field: Field = QQ):
        self.graph = graph
        self.field = field
        self.groupoid = FreePathGroupoid(graph)
        self._zero = field.zero
        self._cells = lru_cache(maxsize=None)(self._cells_uncached)

    def __eq__(self, other):
        return isinstance(other, PathSpace) and self.graph == other.graph and self.field == other.field

    def __hash__(self):
        return hash((self.graph, self.field))

    # construction

    def function(self, terms: Union[Mapping[Path, object], Iterable[tuple[Path, object]]]) -> CylFunction:
        """Canonical cylinder function from ``{path: coefficient}`` data."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, Scalar] = defaultdict(lambda: self._zero)
        for p, c in items:
            acc[p] += self.field(c)
        return CylFunction(self, self.canonicalize(acc))

    def zero(self) -> CylFunction:
        return CylFunction(self, {})

    def indicator(self, p: Path) -> CylFunction:
        return self.function({p: 1})

    def vertex(self, v: str) -> CylFunction:
        return self.indicator(self.graph.vertex_path(v))

    def path(self, *edges: str) -> CylFunction:
        return self.indicator(self.graph.path(edges))

    def one(self, s: SForm) -> CylFunction:
        """``1_s``: the unit of D_s, i.e. the indicator of ``X_s``.

        ``X_{a b*} = X_a``, ``X_{a*} = X_{r(a)}`` and ``X_v`` for identities;
        in every case this is the cylinder of ``s.head``.
        """
        return self.indicator(s.head)

    # canonical form

    def _cells_uncached(self, p: Path, depth: int) -> tuple[Path, ...]:
        if p.length >= depth or self.graph.is_sink(p.end):
            return (p,)
        out: list[Path] = []
        for e in self.graph.out_edges(p.end):
            out.extend(self._cells(self.graph.extend(p, e), depth))
        return tuple(out)

    def canonicalize(self, terms: Mapping[Path, Scalar]) -> dict[Path, Scalar]:
        live = {p: c for p, c in terms.items() if c}
        if not live:
            return {}
        if len(live) == 1:
            # a lone cylinder only merges up through single-child parents
            (p, c), = live.items()
            while p.edges and len(self.graph.out_edges(p.parent(self.graph).end)) == 1:
                p = p.parent(self.graph)
            return {p: c}
        depth = max(p.length for p in live)
        leaves: dict[Path, Scalar] = defaultdict(lambda: self._zero)
        for p, c in live.items():
            for cell in self._cells(p, depth):
                leaves[cell] += c
        current = {p: c for p, c in leaves.items() if c}
        for level in range(depth, 0, -1):
            families: dict[Path, dict[str, Scalar]] = defaultdict(dict)
            for p, c in current.items():
                if p.length == level:
                    families[p.parent(self.graph)][p.edges[-1]] = c
            for parent, kids in families.items():
                out = self.graph.out_edges(parent.end)
                if len(kids) != len(out):
                    continue
                values = set(kids.values())
                if len(values) != 1:
                    continue
                for eid in kids:
                    del current[Path(parent.start, self.graph.edge(eid).range, parent.edges + (eid,))]
                current[parent] = values.pop()
        return dict(sorted(current.items(), key=lambda kv: key_order(kv[0])))

    # the partial action

    def prefixes(self, s: SForm) -> tuple[Path, Path]:
        """(domain prefix, image prefix) of theta_s: ``tail xi -> head xi``."""
        return s.tail, s.head

    def _covers(self, p: Path, q: Path) -> bool:
        """For p a prefix of q: is X_p == X_q (every step below p forced)?"""
        v = p.end
        for eid in q.edges[p.length:]:
            if len(self.graph.out_edges(v)) != 1:
                return False
            v = self.graph.edge(eid).range
        return True

    def alpha(self, s: SForm, f: CylFunction) -> CylFunction:
        """``alpha_s(f) = f o theta_{s^-1}``, mapping D_{s^-1} onto D_s."""
        src, dst = self.prefixes(s)
        out: dict[Path, Scalar] = defaultdict(lambda: self._zero)
        n = src.length
        for p, c in f.terms.items():
            if p.has_prefix(src):
                out[Path(dst.start, p.end, dst.edges + p.edges[n:])] += c
            elif src.has_prefix(p) and self._covers(p, src):
                # a merged key above src with X_p == X_src
                out[dst] += c
            else:
                raise DomainError(f"function is not supported in X_{s.inverse()}: key {p}")
        return CylFunction(self, self.canonicalize(out))

    # points

    def boundary_points(self, depth: int) -> list[BoundaryPoint]:
        """The depth-``depth`` partition of X, one representative per cell."""
        cells: list[Path] = []
        for v in self.graph.vertices:
            cells.extend(self._cells(Path(v, v), depth))
        cells.sort(key=key_order)
        return [
            SinkPath(p) if self.graph.is_sink(p.end) else Truncation(p) for p in cells
        ]

    def points(self) -> list[Path]:
        """Every point of X; only defined when the graph is acyclic."""
        if not self.graph.is_acyclic():
            raise ValueError("X is infinite for graphs with cycles")
        return [pt.path for pt in self.boundary_points(self.graph.longest_path_length())]

    def evaluate(self, f: CylFunction, point: BoundaryPoint) -> Scalar:
        p = point.path
        if isinstance(point, Truncation):
            if self.graph.is_sink(p.end):
                raise ValueError("truncation must end at a non-sink; use SinkPath")
            need = max((k.length for k in f.terms), default=0)
            if p.length < need:
                raise ValueError(f"truncation depth {p.length} below key length {need}")
        elif not self.graph.is_sink(p.end):
            raise ValueError(f"{p} does not end at a sink")
        return evaluate_terms(f.terms, p, self._zero)


def evaluate_terms(terms: Mapping[Path, Scalar], point: Path, zero) -> Scalar:
    total = zero
    for k, c in terms.items():
        if point.has_prefix(k):
            total += c
    return total


class CylFunction:
    """An element of D(X), always held in canonical form."""

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space: PathSpace, terms: dict[Path, Scalar]):
        self.space = space
        self.terms = terms
        self._hash: Optional[int] = None

    def _check(self, other: CylFunction) -> None:
        if self.space != other.space:
            raise ValueError("cylinder functions over different graphs or fields")

    def __add__(self, other: CylFunction) -> CylFunction:
        self._check(other)
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, self.space._zero) + c
        return self.space.function(merged)

    def __neg__(self) -> CylFunction:
        return CylFunction(self.space, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: CylFunction) -> CylFunction:
        return self + (-other)

    def scale(self, c) -> CylFunction:
        c = self.space.field(c)
        if not c:
            return self.space.zero()
        return CylFunction(self.space, {p: c * x for p, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CylFunction):
            return self.scale(other)
        self._check(other)
        out: dict[Path, Scalar] = defaultdict(lambda: self.space._zero)
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                if q.has_prefix(p):
                    out[q] += c * d
                elif p.has_prefix(q):
                    out[p] += c * d
        return CylFunction(self.space, self.space.canonicalize(out))

    def __rmul__(self, c) -> CylFunction:
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CylFunction):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def max_key_length(self) -> int:
        return max((p.length for p in self.terms), default=0)

    def render(self) -> str:
        if not self.terms:
            return "0"
        fmt = self.space.field.format
        return " + ".join(f"{fmt(c)}*1_[{p}]" for p, c in self.terms.items())

    def __repr__(self) -> str:
        return f"CylFunction({self.render()})"


def _memo(fn):
    cache: dict = {}

    def wrapped(s, f):
        key = (s, f)
        if key not in cache:
            cache[key] = fn(s, f)
        return cache[key]

    return wrapped


def check_partial_action_axioms(
    space: PathSpace, depth: int, alpha: Optional[Callable[[SForm, CylFunction], CylFunction]] = None
) -> Report:
    """Check the partial-action axioms for every pair of S-elements.

    S is enumerated up to word length ``depth``. Checked: (i) alpha at an
    identity fixes every cylinder below it; (ii) theta_h^-1(X_{g^-1} & X_h)
    lies in X_{(gh)^-1}; (iii) alpha_g(alpha_h(x)) = alpha_{gh}(x) on that
    set. ``alpha`` lets callers substitute a different family (for mutation
    tests).
    """
    alpha = _memo(alpha or space.alpha)
    G = space.groupoid
    report = Report("partial-action axioms")
    forms = G.enumerate_S(depth, max_word_len=depth)
    report.data["S_size"] = len(forms)

    def attempt(fn, *args):
        try:
            return fn(*args)
        except DomainError as exc:
            return exc

    paths = space.graph.enumerate_paths(depth)
    for v in space.graph.vertices:
        idv = G.sform(v)
        for q in paths:
            if q.start != v:
                continue
            f = space.indicator(q)
            got = attempt(alpha, idv, f)
            report.check(got == f, lambda: f"alpha_{v}(1_[{q}]) = {got}")

    by_source: dict[str, list[SForm]] = defaultdict(list)
    for h in forms:
        by_source[h.source].append(h)
    for g in forms:
        g_inv_unit = space.one(g.inverse())
        for h in by_source[g.range]:
            # (g, h) composable: d(g) = eps(h)
            gh = G.classify(G.mul(g.element, h.element))
            dom = g_inv_unit * space.one(h)
            if not dom:
                # empty domain: (ii) and (iii) hold vacuously
                report.check(True, "")
                continue
            pulled = attempt(alpha, h.inverse(), dom)
            if isinstance(pulled, Exception):
                report.fail(f"alpha_{h.inverse()} undefined on X_{g.inverse()} & X_{h}: {pulled}")
                continue
            target = space.one(gh.inverse()) if gh is not None else space.zero()
            if not report.check(
                pulled * target == pulled,
                lambda: f"theta_{h}^-1(X_{g.inverse()} & X_{h}) = {pulled.render()} not inside X_({g} {h})^-1",
            ):
                continue
            samples = [pulled]
            for p in pulled.terms:
                samples.extend(
                    pulled * space.indicator(space.graph.extend(p, e)) for e in space.graph.out_edges(p.end)
                )
            for x in samples:
                if not x:
                    continue
                lhs = attempt(alpha, h, x)
                if not isinstance(lhs, Exception):
                    lhs = attempt(alpha, g, lhs)
                rhs = attempt(alpha, gh, x) if gh is not None else space.zero()
                report.check(
                    not isinstance(lhs, Exception) and lhs == rhs,
                    lambda: f"alpha_{g}(alpha_{h}({x.render()})) = {lhs} but alpha_{gh}(..) = {rhs}",
                )
    return report


def check_alpha_identity(space: PathSpace, depth: int) -> Report:
    """``alpha_p(1_{p^-1} 1_q) = 1_p 1_{pq}`` for all p, q in S up to word length ``depth``.

    ``1_{pq}`` is zero when the pair is not composable or the product leaves S.
    """
    G = space.groupoid
    report = Report("alpha identity")
    forms = G.enumerate_S(depth, max_word_len=depth)
    report.data["S_size"] = len(forms)
    for p in forms:
        lhs_dom = space.one(p.inverse())
        for q in forms:
            if p.range != q.source:
                # not composable: 1_{p^-1} 1_q lives on different vertices, both sides vanish
                report.check(not (lhs_dom * space.one(q)), lambda: f"p={p}, q={q}: disjoint units overlap")
                continue
            x = lhs_dom * space.one(q)
            try:
                lhs = space.alpha(p, x)
            except DomainError as exc:
                report.fail(f"alpha_{p} undefined on 1_{p.inverse()} 1_{q}: {exc}")
                continue
            pq = G.mul(p.element, q.element)
            s = G.classify(pq) if pq is not None else None
            rhs = space.one(p) * space.one(s) if s is not None else space.zero()
            report.check(lhs == rhs, lambda: f"p={p}, q={q}: {lhs.render()} != {rhs.render()}")
    return report
