"""Shared fixtures, seeded random graphs, homs and expressions for the tests."""

from __future__ import annotations

import random
from pathlib import Path as FilePath

from lpagroupoid.graph import Edge, Graph, load_graph
from lpagroupoid.groupoid import FreePathGroupoid, Letter
from lpagroupoid.iso import GroupoidHom, load_hom

FIXTURES = FilePath(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def fixture_graph(name: str) -> Graph:
    return load_graph((FIXTURES / f"{name}.graph").read_text())


def fixture_hom(name: str, source: str, target: str) -> GroupoidHom:
    return load_hom((FIXTURES / f"{name}.hom").read_text(), fixture_graph(source), fixture_graph(target))


def random_graph(
    rng: random.Random, max_vertices: int = 6, max_edges: int = 10, acyclic: bool = False, max_out: int = 3
) -> Graph:
    n = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(n)]
    m = rng.randint(0, max_edges)
    edges = []
    out = [0] * n
    for j in range(m):
        a, b = rng.randrange(n), rng.randrange(n)
        if out[a] >= max_out:
            continue
        if acyclic:
            if n == 1:
                break
            a, b = sorted((a, b))
            if a == b:
                b = a + 1 if a + 1 < n else a - 1
                a, b = sorted((a, b))
        out[a] += 1
        edges.append(Edge(f"e{len(edges)}", verts[a], verts[b]))
    return Graph(verts, edges)


def random_graphs(count: int = 25, seed: int = 1729) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng, acyclic=(i % 3 == 0)) for i in range(count)]


FIXTURE_NAMES = ("E1", "E2", "loop_exit")


def corpus() -> list[tuple[str, Graph]]:
    named = [(n, fixture_graph(n)) for n in FIXTURE_NAMES]
    named += [(f"random{i:02d}", g) for i, g in enumerate(random_graphs())]
    return named


def acyclic_graphs() -> list[tuple[str, Graph]]:
    out = [(n, fixture_graph(n)) for n in ("E1", "E2", "ex31")]
    out += [(n, g) for n, g in corpus()[3:] if g.is_acyclic() and g.edges][:3]
    return out


# random words and expressions


def random_walk(rng: random.Random, graph: Graph, length: int) -> list[str]:
    """A composable generator word: each letter starts where the previous ends."""
    v = rng.choice(graph.vertices)
    word = [v] if rng.random() < 0.3 or not graph.edges else []
    for _ in range(length):
        options = [(e.id, e.range) for e in graph.edges if e.source == v]
        options += [(e.id + "*", e.source) for e in graph.edges if e.range == v]
        if not options:
            break
        name, v = rng.choice(options)
        word.append(name)
    return word or [v]


def random_generator(rng: random.Random, graph: Graph) -> str:
    names = list(graph.vertices)
    for e in graph.edge_ids:
        names += [e, e + "*"]
    return rng.choice(names)


def random_expr(rng: random.Random, graph: Graph, max_terms: int = 3, max_len: int = 4) -> str:
    parts = []
    for i in range(rng.randint(1, max_terms)):
        if rng.random() < 0.8:
            word = random_walk(rng, graph, rng.randint(0, max_len))
        else:
            word = [random_generator(rng, graph) for _ in range(rng.randint(1, 3))]
        body = " ".join(word)
        r = rng.random()
        if r < 0.25:
            body = f"{rng.randint(2, 5)} {body}"
        elif r < 0.35:
            body = f"{rng.randint(1, 5)}/{rng.randint(2, 4)} {body}"
        sign = rng.choice("+-") if i else ("-" if rng.random() < 0.2 else "")
        parts.append(f"{sign} {body}".strip() if sign else body)
    out = parts[0]
    for p in parts[1:]:
        out += f" {p[0]} {p[1:].strip()}"
    if rng.random() < 0.15:
        out = f"({out}) {' '.join(random_walk(rng, graph, 2))}"
    return out


# random homomorphisms


def _elements_between(G: FreePathGroupoid, max_len: int):
    table: dict[tuple[str, str], list] = {}
    for g in G.elements(max_len):
        table.setdefault((g.source, g.range), []).append(g)
    return table


def random_hom(rng: random.Random, g1: Graph, g2: Graph, max_len: int = 2, tries: int = 50):
    """A hom with random vertex images and random endpoint-compatible edge images."""
    G2 = FreePathGroupoid(g2)
    table = _elements_between(G2, max_len)
    for _ in range(tries):
        vm = {v: rng.choice(g2.vertices) for v in g1.vertices}
        em = {}
        for e in g1.edges:
            options = table.get((vm[e.source], vm[e.range]), [])
            if not options:
                break
            em[e.id] = rng.choice(options)
        else:
            return GroupoidHom(g1, g2, vm, em)
    return None


def relabeling(rng: random.Random, g: Graph):
    """A graph isomorphic to ``g`` with fresh names, plus the hom between them."""
    vnames = {v: f"p{i}" for i, v in enumerate(rng.sample(list(g.vertices), len(g.vertices)))}
    enames = {e: f"g{i}" for i, e in enumerate(rng.sample(list(g.edge_ids), len(g.edge_ids)))}
    target = g.relabel({**vnames, **enames})
    G2 = FreePathGroupoid(target)
    em = {e.id: G2.reduce([Letter(enames[e.id], False)], anchor=vnames[e.source]) for e in g.edges}
    return target, GroupoidHom(g, target, vnames, em)


def perturbed_relabeling(rng: random.Random, g: Graph):
    """A relabeling with one edge image replaced by another compatible element."""
    target, h = relabeling(rng, g)
    if not g.edges:
        return target, h
    G2 = h.target
    table = _elements_between(G2, 2)
    e = rng.choice(g.edges)
    old = h.edge_map[e.id]
    options = [x for x in table.get((old.source, old.range), []) if x != old]
    if not options:
        return target, h
    em = dict(h.edge_map)
    em[e.id] = rng.choice(options)
    return target, GroupoidHom(g, target, h.vertex_map, em)
