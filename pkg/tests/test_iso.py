import random

import pytest

from lpagroupoid.errors import HomFormatError, InputError
from lpagroupoid.graph import load_graph
from lpagroupoid.groupoid import FreePathGroupoid, InvPath
from lpagroupoid.iso import (
    BuildError,
    GroupoidHom,
    build_graded_iso,
    check_converse_410,
    check_corollary_411,
    check_hypotheses_49,
    check_hypotheses_bounded,
    check_inverse,
    load_hom,
    verify_images,
)

from corpus import corpus, fixture_graph, fixture_hom, perturbed_relabeling, random_hom, relabeling


@pytest.fixture(scope="module")
def twisted():
    return fixture_hom("ex412", "E1", "E2")


@pytest.fixture(scope="module")
def relabel():
    return fixture_hom("relabel", "E1", "E1prime")


@pytest.fixture(scope="module")
def twisted_witness(twisted):
    return build_graded_iso(twisted, strict=False)


def word(G, text):
    return G.parse_word(text)


def test_vertex_images_inferred(twisted):
    assert twisted.vertex_map == {"v1": "w3", "v2": "w1", "v3": "w2"}
    assert len(twisted.inferred) == 3


def test_extend(twisted):
    G1, G2 = twisted.source, twisted.target
    assert twisted.extend(word(G1, "e1 e2")) == word(G2, "f2*")
    assert twisted.extend(G1.identity("v1")) == G2.identity("w3")
    assert twisted.extend(word(G1, "e1*")) == word(G2, "f1")


def test_hom_format_errors():
    e1, e2 = fixture_graph("E1"), fixture_graph("E2")
    bad = [
        "map e1 -> f1\nmap e2 -> f1 f2*",  # forces h(v2) twice
        "map e1 -> f1*\nmap e1 -> f1*",
        "map q -> w1",
        "map v1 -> f1",
        "map e1 -> f1 f2",
        "mop e1 -> f1",
        "map e1 -> f1*\nmap v1 -> w1",
    ]
    for text in bad:
        with pytest.raises(HomFormatError):
            load_hom(text, e1, e2)
    with pytest.raises(HomFormatError):
        load_hom("map e1 -> f1*", e1, e2)  # v3 has no image


def test_hypotheses_exact(twisted, relabel):
    assert check_hypotheses_49(relabel).passed
    r = check_hypotheses_49(twisted)
    assert not r.passed
    assert "f1" in r.data["edges_not_in_image"]
    assert any("f1 is not in h(W1)" in n for n in r.notes)


def collapse_hom():
    src = load_graph("vertex a; vertex b; edge x: a -> b; edge y: a -> b")
    dst = load_graph("vertex c; vertex d; edge z: c -> d")
    return load_hom("map x -> z\nmap y -> z", src, dst)


def test_hypotheses_collapse():
    h = collapse_hom()
    r = check_hypotheses_49(h)
    assert not r.passed and any("not injective" in f for f in r.failures)
    b = check_hypotheses_bounded(h, 1)
    assert not b.passed and any("not injective" in f for f in b.failures)


def test_hypotheses_bounded(twisted, relabel):
    r = check_hypotheses_bounded(twisted, 2)
    assert not r.passed and "f1" in r.data["unhit"]
    assert check_hypotheses_bounded(relabel, 3).passed


def test_build_twisted_unchecked(twisted_witness):
    w = twisted_witness
    R2 = w.target_ring
    g2 = R2.graph
    assert w.images["e1"] == R2.monomial(InvPath(g2.path(["f1"])))
    assert w.images["e1"].terms[InvPath(g2.path(["f1"]))] == R2.space.vertex("w3")
    assert w.images["v1"] == R2.gen_vertex("w3")
    assert w.report.passed, w.report.failures
    # CK at v1 carried over: phi(e1) phi(e1*) = phi(v1)
    assert w.images["e1"] * w.images["e1*"] == R2.gen_vertex("w3")


def test_build_twisted_strict_refused(twisted):
    with pytest.raises(BuildError):
        build_graded_iso(twisted, strict=True)


def test_build_relabel_strict(relabel):
    w = build_graded_iso(relabel, strict=True)
    assert w.report.passed
    assert check_inverse(w).passed


def test_build_error_outside_S():
    src = load_graph("vertex p; vertex q; edge z: p -> q")
    h = load_hom("map z -> e3* e4", src, fixture_graph("ex31"))
    with pytest.raises(BuildError):
        build_graded_iso(h, strict=False)


def test_zeroed_image_fails_verification(twisted_witness):
    w = twisted_witness
    mutated = type(w)(w.hom, w.source_ring, w.target_ring, dict(w.images), w.degrees, strict=False)
    mutated.images["e1*"] = w.target_ring.zero()
    r = verify_images(mutated, samples=10)
    assert not r.passed and r.failures


def test_inverse_twisted(twisted_witness):
    r = check_inverse(twisted_witness)
    assert r.passed, r.failures
    assert any("k(f1) = e1*" in n for n in r.notes)


def test_converse_twisted(twisted, twisted_witness):
    r = check_converse_410(twisted, twisted_witness, 2)
    assert r.passed, r.failures
    assert r.data["S1_size"] == r.data["S2_size"] == 9
    assert r.data["complete"]


def test_converse_relabel(relabel):
    w = build_graded_iso(relabel)
    assert check_converse_410(relabel, w, 3).passed


def test_converse_loop_precondition():
    loop = fixture_graph("loop")
    target, h = relabeling(random.Random(0), loop)
    w = build_graded_iso(h)
    r = check_converse_410(h, w, 3)
    assert not r.passed and r.data["preconditions"] is False
    assert any("condition (L)" in f for f in r.failures)


def test_edge_unit_check(twisted, twisted_witness, relabel):
    r = check_corollary_411(twisted, twisted_witness)
    assert r.data["hypothesis"] is False
    assert "f1" in r.data["unhit"]
    r = check_corollary_411(relabel, build_graded_iso(relabel))
    assert r.data["hypothesis"] is True and r.passed


def test_edge_unit_check_ghost_mutation():
    # e1 sent to the ghost of its relabeled image, vertices adjusted to fit
    e1, e1p = fixture_graph("E1"), fixture_graph("E1prime")
    G = FreePathGroupoid(e1p)
    h = GroupoidHom(
        e1, e1p, {"v1": "p2", "v2": "p1", "v3": "p3"}, {"e1": word(G, "g1*"), "e2": word(G, "g1 g2")}
    )
    assert not check_hypotheses_49(h).passed
    w = build_graded_iso(h, strict=False)
    r = check_corollary_411(h, w)
    assert r.data["hypothesis"] is False


def test_hom_rejects_incompatible_images():
    e1, e2 = fixture_graph("E1"), fixture_graph("E2")
    G = FreePathGroupoid(e2)
    with pytest.raises(InputError):
        GroupoidHom(e1, e2, {"v1": "w1", "v2": "w3", "v3": "w3"}, {"e1": word(G, "f2"), "e2": word(G, "w3")})


def test_exact_and_bounded_agree_on_random_homs():
    rng = random.Random(5)
    graphs = [g for _, g in corpus() if g.edges]
    for _ in range(30):
        g1 = rng.choice(graphs)
        kind = rng.random()
        if kind < 0.3:
            _, h = relabeling(rng, g1)
        elif kind < 0.6:
            _, h = perturbed_relabeling(rng, g1)
        else:
            h = random_hom(rng, g1, rng.choice(graphs))
            if h is None:
                continue
        assert check_hypotheses_49(h).passed == check_hypotheses_bounded(h, 6).passed
