import random
import zlib
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpagroupoid.cylinder import (
    PathSpace,
    SinkPath,
    Truncation,
    check_alpha_identity,
    check_partial_action_axioms,
    evaluate_terms,
)
from lpagroupoid.errors import DomainError
from lpagroupoid.groupoid import IdVertex, InvPath, PathForm, PathPair
from lpagroupoid.scalars import PrimeField

from corpus import acyclic_graphs, corpus, fixture_graph

E1 = PathSpace(fixture_graph("E1"))
E2 = PathSpace(fixture_graph("E2"))
LOOP = PathSpace(fixture_graph("loop"))


def test_one_examples():
    g2 = E2.graph
    assert E2.one(PathPair(g2.path(["f1"]), g2.path(["f2"]))) == E2.path("f1")
    assert E1.one(InvPath(E1.graph.path(["e1"]))) == E1.vertex("v2")
    w3 = E2.one(IdVertex("w3"))
    assert E2.evaluate(w3, SinkPath(g2.vertex_path("w3"))) == 1
    assert E2.evaluate(w3, SinkPath(g2.path(["f1"]))) == 0


def test_mul_examples():
    assert not (E2.path("f1") * E2.path("f2"))
    assert E1.vertex("v1") * E1.path("e1") == E1.path("e1")
    assert E1.path("e1") * E1.path("e1", "e2") == E1.path("e1", "e2")


def test_canonical_examples():
    f = E2.path("f1") + E2.path("f2") + E2.vertex("w3")
    g2 = E2.graph
    assert f.terms == {g2.vertex_path("w1"): 1, g2.vertex_path("w2"): 1, g2.vertex_path("w3"): 1}
    assert E2.function({}) == E2.zero()
    assert E1.path("e1", "e2").terms == {E1.graph.vertex_path("v1"): 1}
    assert E1.vertex("v2") == E1.path("e2")
    assert E1.vertex("v2").terms == {E1.graph.vertex_path("v2"): 1}


def test_eq_examples():
    assert E2.vertex("w1") == E2.path("f1")
    assert E1.vertex("v1") != E1.vertex("v2")
    f = E1.vertex("v1") * 3
    assert f == f + E1.vertex("v2") * 0


def test_canonical_keeps_partial_families():
    ex = PathSpace(fixture_graph("ex31"))
    f = ex.path("e3") * 2 + ex.path("e4")
    assert len(f.terms) == 2
    assert ex.path("e3") + ex.path("e4") == ex.vertex("d")


def test_alpha_examples():
    g2 = E2.graph
    s = PathPair(g2.path(["f1"]), g2.path(["f2"]))
    assert E2.alpha(s, E2.path("f2")) == E2.path("f1")
    f = E1.path("e1") * Fraction(2, 3)
    assert E1.alpha(IdVertex("v1"), f) == f
    assert E1.alpha(PathForm(E1.graph.path(["e1"])), E1.vertex("v2")) == E1.path("e1")


def test_alpha_outside_domain():
    g2 = E2.graph
    s = PathPair(g2.path(["f1"]), g2.path(["f2"]))
    with pytest.raises(DomainError):
        E2.alpha(s, E2.path("f1"))
    with pytest.raises(DomainError):
        E2.alpha(s, E2.vertex("w3"))


def test_evaluate_examples():
    g1 = E1.graph
    assert E1.evaluate(E1.path("e1"), SinkPath(g1.path(["e1", "e2"]))) == 1
    assert E1.evaluate(E1.path("e1"), SinkPath(g1.path(["e2"]))) == 0
    ccc = LOOP.graph.path(["c", "c", "c"])
    assert LOOP.evaluate(LOOP.vertex("u"), Truncation(ccc)) == 1
    lx = PathSpace(fixture_graph("loop_exit"))
    with pytest.raises(ValueError):
        lx.evaluate(lx.path("c", "c", "c", "c"), Truncation(lx.graph.path(["c", "c", "c"])))
    with pytest.raises(ValueError):
        E1.evaluate(E1.vertex("v1"), SinkPath(g1.path(["e1"])))


def random_terms(rng, space, n_keys, max_len):
    paths = space.graph.enumerate_paths(max_len)
    return {rng.choice(paths): Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n_keys)}


def split_variant(rng, space, terms):
    """A different raw presentation of the same function."""
    out = dict(terms)
    g = space.graph
    for p in list(out):
        if rng.random() < 0.5 and g.out_edges(p.end):
            c = out.pop(p)
            for e in g.out_edges(p.end):
                q = g.extend(p, e)
                out[q] = out.get(q, 0) + c
    v = rng.choice(g.vertices)
    if rng.random() < 0.5 and g.out_edges(v):
        # add k 1_v - k sum 1_e, which is zero
        k = rng.randint(1, 3)
        out[g.vertex_path(v)] = out.get(g.vertex_path(v), 0) + k
        for e in g.out_edges(v):
            q = g.path([e.id])
            out[q] = out.get(q, 0) - k
    return out


@pytest.mark.parametrize("name, graph", acyclic_graphs())
def test_pointwise_oracle(name, graph):
    space = PathSpace(graph)
    X = space.points()
    rng = random.Random(zlib.crc32(name.encode()))
    for _ in range(150):
        a = random_terms(rng, space, rng.randint(0, 4), 3)
        b = split_variant(rng, space, a) if rng.random() < 0.5 else random_terms(rng, space, rng.randint(0, 4), 3)
        fa, fb = space.function(a), space.function(b)
        for xi in X:
            assert space.evaluate(fa, SinkPath(xi)) == evaluate_terms(a, xi, Fraction(0))
        same = all(evaluate_terms(a, xi, 0) == evaluate_terms(b, xi, 0) for xi in X)
        assert (fa == fb) == same
        prod = fa * fb
        for xi in X:
            assert evaluate_terms(prod.terms, xi, 0) == evaluate_terms(a, xi, 0) * evaluate_terms(b, xi, 0)


@pytest.mark.parametrize("name, graph", [c for c in corpus() if not c[1].is_acyclic()][:6])
def test_boundary_oracle_on_cyclic(name, graph):
    space = PathSpace(graph)
    rng = random.Random(7)
    for _ in range(40):
        a = random_terms(rng, space, rng.randint(1, 4), 2)
        b = split_variant(rng, space, a) if rng.random() < 0.5 else random_terms(rng, space, 2, 2)
        fa, fb = space.function(a), space.function(b)
        pts = space.boundary_points(4)
        same = all(evaluate_terms(a, pt.path, 0) == evaluate_terms(b, pt.path, 0) for pt in pts)
        assert (fa == fb) == same
        for pt in pts:
            assert space.evaluate(fa, pt) == evaluate_terms(a, pt.path, 0)


SPACES = [PathSpace(g) for _, g in corpus()[:12]]


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_algebra_properties(seed):
    rng = random.Random(seed)
    space = rng.choice(SPACES)
    f, g, h = (space.function(random_terms(rng, space, rng.randint(0, 3), 3)) for _ in range(3))
    assert space.function(f.terms) == f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == space.zero()
    assert f.scale(Fraction(1, 2)) * 2 == f


@pytest.mark.parametrize("name, graph", corpus()[:10])
def test_ck_at_every_vertex(name, graph):
    space = PathSpace(graph)
    for v in graph.vertices:
        out = graph.out_edges(v)
        if out:
            total = space.zero()
            for e in out:
                total = total + space.path(e.id)
            assert total == space.vertex(v)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_alpha_is_partial_isomorphism(seed):
    rng = random.Random(seed)
    space = rng.choice(SPACES)
    forms = space.groupoid.enumerate_S(2)
    s = rng.choice(forms)
    dom = space.one(s.inverse())
    f = dom * space.function(random_terms(rng, space, 3, 3))
    g = dom * space.function(random_terms(rng, space, 3, 3))
    assert space.alpha(s.inverse(), space.alpha(s, f)) == f
    assert space.alpha(s, f * g) == space.alpha(s, f) * space.alpha(s, g)
    assert space.alpha(s, f + g) == space.alpha(s, f) + space.alpha(s, g)
    assert space.alpha(s, dom) == space.one(s)


@pytest.mark.parametrize("name", ["E1", "E2", "loop_exit", "ex31", "loop"])
def test_axioms_and_identity_on_fixtures(name):
    space = PathSpace(fixture_graph(name))
    r = check_partial_action_axioms(space, 4)
    assert r.passed, r.failures
    assert r.checks > 0
    r = check_alpha_identity(space, 4)
    assert r.passed, r.failures


def test_axioms_small_depth_examples():
    assert check_partial_action_axioms(E1, 2).passed
    assert check_partial_action_axioms(E2, 2).passed


class SwappedPrefixes(PathSpace):
    """theta for one S-element rewrites to the wrong prefix."""

    def __init__(self, graph, victim):
        super().__init__(graph)
        self.victim = victim

    def prefixes(self, s):
        if s == self.victim:
            return s.head, s.tail
        return super().prefixes(s)


class LongerImage(PathSpace):
    def __init__(self, graph, victim, extra):
        super().__init__(graph)
        self.victim, self.extra = victim, extra

    def prefixes(self, s):
        src, dst = super().prefixes(s)
        if s == self.victim:
            dst = self.graph.extend(dst, self.graph.edge(self.extra))
        return src, dst


def test_mutation_swapped_prefixes_fails():
    g2 = fixture_graph("E2")
    victim = PathPair(g2.path(["f1"]), g2.path(["f2"]))
    r = check_partial_action_axioms(SwappedPrefixes(g2, victim), 2)
    assert not r.passed and r.failures


def test_mutation_longer_image_fails():
    g = fixture_graph("loop_exit")
    victim = PathForm(g.path(["c"]))
    r = check_partial_action_axioms(LongerImage(g, victim, "c"), 3)
    assert not r.passed and r.failures
    assert not check_alpha_identity(LongerImage(g, victim, "c"), 3).passed


def test_prime_field_canonical_form():
    space = PathSpace(fixture_graph("E2"), PrimeField(3))
    f = space.path("f1") * 2 + space.path("f1")
    assert f == space.zero()
    assert space.vertex("w1") * 4 == space.path("f1")
