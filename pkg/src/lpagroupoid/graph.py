"""Finite directed graphs and their finite paths."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import GraphFormatError

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_VERTEX_LINE = re.compile(r"vertex\s+(\S+)\Z")
_EDGE_LINE = re.compile(r"edge\s+(\S+?)\s*:\s*(\S+?)\s*->\s*(\S+)\Z")


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    range: str


class Path(NamedTuple):
    """A finite path; an empty ``edges`` tuple is the vertex ``start``."""

    start: str
    end: str
    edges: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def has_prefix(self, other: Path) -> bool:
        n = len(other.edges)
        return self.start == other.start and self.edges[:n] == other.edges

    def concat(self, other: Path) -> Path:
        if self.end != other.start:
            raise ValueError(f"cannot concatenate {self} and {other}")
        return Path(self.start, other.end, self.edges + other.edges)

    def parent(self, graph: Graph) -> Path:
        if not self.edges:
            raise ValueError("a vertex has no parent")
        last = graph.edge(self.edges[-1])
        return Path(self.start, last.source, self.edges[:-1])

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else self.start


class Graph:
    """An immutable finite directed graph ``E = (E0, E1, r, s)``.

    Vertices and edges are kept sorted by id so every derived listing is
    deterministic.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        vs = list(vertices)
        es = list(edges)
        if not vs:
            raise ValueError("a graph needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise ValueError("duplicate vertex id")
        ids = [e.id for e in es]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge id")
        clash = set(vs) & set(ids)
        if clash:
            raise ValueError(f"ids used for both a vertex and an edge: {sorted(clash)}")
        vset = set(vs)
        for e in es:
            for end in (e.source, e.range):
                if end not in vset:
                    raise ValueError(f"edge {e.id} has undeclared endpoint {end}")
        self.vertices: tuple[str, ...] = tuple(sorted(vs))
        self._edges = {e.id: e for e in sorted(es, key=lambda e: e.id)}
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self._edges.values():
            out[e.source].append(e)
        self._out = {v: tuple(es) for v, es in out.items()}

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    def edge(self, edge_id: str) -> Edge:
        return self._edges[edge_id]

    def has_vertex(self, name: str) -> bool:
        return name in self._out

    def has_edge(self, name: str) -> bool:
        return name in self._edges

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def sinks(self) -> frozenset[str]:
        return frozenset(v for v in self.vertices if not self._out[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self._edges.values())))

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={len(self._edges)})"

    # paths

    def vertex_path(self, v: str) -> Path:
        if v not in self._out:
            raise KeyError(v)
        return Path(v, v)

    def path(self, edge_ids: Iterable[str]) -> Path:
        ids = tuple(edge_ids)
        if not ids:
            raise ValueError("use vertex_path for length-0 paths")
        first = self._edges[ids[0]]
        end = first.source
        for eid in ids:
            e = self._edges[eid]
            if e.source != end:
                raise ValueError(f"edges {' '.join(ids)} do not form a path")
            end = e.range
        return Path(first.source, end, ids)

    def extend(self, p: Path, e: Edge) -> Path:
        return Path(p.start, e.range, p.edges + (e.id,))

    def enumerate_paths(self, max_len: int) -> list[Path]:
        """All paths of length at most ``max_len``, by length then edge ids."""
        layer = [Path(v, v) for v in self.vertices]
        result = list(layer)
        for _ in range(max_len):
            layer = [self.extend(p, e) for p in layer for e in self._out[p.end]]
            layer.sort(key=lambda p: (p.edges, p.start))
            result.extend(layer)
        return result

    def is_acyclic(self) -> bool:
        return not self.simple_cycles()

    def longest_path_length(self) -> int:
        if not self.is_acyclic():
            raise ValueError("graph has a cycle")
        memo: dict[str, int] = {}

        def depth(v: str) -> int:
            if v not in memo:
                memo[v] = max((1 + depth(e.range) for e in self._out[v]), default=0)
            return memo[v]

        return max(depth(v) for v in self.vertices)

    def simple_cycles(self) -> list[tuple[str, ...]]:
        """Simple closed cycles as edge-id tuples.

        Each cycle is reported once, rotated to start at its smallest vertex.
        Parallel edges give distinct cycles.
        """
        order = {v: i for i, v in enumerate(self.vertices)}
        cycles: list[tuple[str, ...]] = []
        for root in self.vertices:
            # only vertices >= root so each cycle is found from its minimum
            stack: list[tuple[str, Iterator[Edge]]] = [(root, iter(self._out[root]))]
            on_path = {root}
            trail: list[str] = []
            while stack:
                v, it = stack[-1]
                e = next(it, None)
                if e is None:
                    stack.pop()
                    on_path.discard(v)
                    if trail:
                        trail.pop()
                    continue
                w = e.range
                if w == root:
                    cycles.append(tuple(trail + [e.id]))
                elif order[w] > order[root] and w not in on_path:
                    on_path.add(w)
                    trail.append(e.id)
                    stack.append((w, iter(self._out[w])))
        return cycles

    def cycle_exits(self, cycle: tuple[str, ...]) -> list[str]:
        on_cycle = set(cycle)
        exits = []
        for eid in cycle:
            v = self._edges[eid].source
            exits.extend(f.id for f in self._out[v] if f.id not in on_cycle)
        return exits

    def has_condition_l(self) -> bool:
        """True iff every simple closed cycle has an exit."""
        return all(self.cycle_exits(c) for c in self.simple_cycles())

    def cycles_without_exit(self) -> list[tuple[str, ...]]:
        return [c for c in self.simple_cycles() if not self.cycle_exits(c)]

    # serialization

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e.id}: {e.source} -> {e.range}" for e in self._edges.values()]
        return "\n".join(lines) + "\n"

    def relabel(self, names: dict[str, str]) -> Graph:
        """Copy of the graph with vertex and edge ids renamed by ``names``."""
        rn = lambda x: names.get(x, x)  # noqa: E731
        return Graph(
            [rn(v) for v in self.vertices],
            [Edge(rn(e.id), rn(e.source), rn(e.range)) for e in self._edges.values()],
        )


def load_graph(text: str) -> Graph:
    """Parse the line-based graph format.

    ``vertex <id>`` and ``edge <id>: <src> -> <dst>`` statements, one per
    line or separated by ``;``. ``#`` starts a comment.
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    seen: dict[str, int] = {}
    pending: list[tuple[Edge, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            m = _VERTEX_LINE.match(stmt)
            if m:
                names = [m.group(1)]
            else:
                m = _EDGE_LINE.match(stmt)
                if not m:
                    raise GraphFormatError(f"cannot parse {stmt!r}", lineno)
                names = list(m.groups())
            for name in names:
                if not IDENT.match(name):
                    raise GraphFormatError(f"bad identifier {name!r}", lineno)
            new_id = names[0]
            if new_id in seen:
                raise GraphFormatError(
                    f"duplicate id {new_id!r} (first declared on line {seen[new_id]})", lineno
                )
            seen[new_id] = lineno
            if len(names) == 1:
                vertices.append(new_id)
            else:
                edge = Edge(*names)
                edges.append(edge)
                pending.append((edge, lineno))
    declared = set(vertices)
    for edge, lineno in pending:
        for end in (edge.source, edge.range):
            if end not in declared:
                raise GraphFormatError(f"edge {edge.id} has undeclared endpoint {end!r}", lineno)
    if not vertices:
        raise GraphFormatError("graph declares no vertices", 0)
    return Graph(vertices, edges)
