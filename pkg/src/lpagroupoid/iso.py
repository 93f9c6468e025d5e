"""Groupoid homomorphisms between free path groupoids and graded isomorphisms.

A homomorphism ``h: G1 -> G2`` is fixed by where it sends vertices and
edges; ghosts go to inverses and longer words are multiplied out. From
``h`` we build the candidate ring map ``phi`` on generators,
``1_g delta_g -> 1_{h(g)} delta_{h(g)}``, and check that the images satisfy
the relations of the source graph.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import HomFormatError, InputError, WordError
from .expr import evaluate, parse_expr
from .graph import Graph, Path
from .groupoid import Element, FreePathGroupoid, Letter, SForm
from .report import Report
from .scalars import QQ, Field
from .skewring import RingElement, SkewRing, check_lpa_relations

_MAP_LINE = re.compile(r"map\s+([A-Za-z][A-Za-z0-9_]*)\s*->\s*(.+)\Z")


def path_element(p: Path) -> Element:
    return Element(p.start, p.end, tuple(Letter(e) for e in p.edges))


def is_path_element(g: Element) -> bool:
    return not any(l.ghost for l in g.letters)


class GroupoidHom:
    """``h: G1 -> G2`` given on vertices and edges."""

    def __init__(
        self,
        source: Graph,
        target: Graph,
        vertex_map: dict[str, str],
        edge_map: dict[str, Element],
    ):
        self.source = FreePathGroupoid(source)
        self.target = FreePathGroupoid(target)
        self.vertex_map = dict(sorted(vertex_map.items()))
        self.edge_map = dict(sorted(edge_map.items()))
        self.inferred: list[str] = []
        for v in source.vertices:
            if v not in vertex_map:
                raise InputError(f"vertex {v} has no image")
            if not target.has_vertex(vertex_map[v]):
                raise InputError(f"h({v}) = {vertex_map[v]} is not a vertex of the target")
        for e in source.edges:
            if e.id not in edge_map:
                raise InputError(f"edge {e.id} has no image")
            img = edge_map[e.id]
            if img.source != vertex_map[e.source] or img.range != vertex_map[e.range]:
                raise InputError(
                    f"h({e.id}) = {img} runs {img.source} -> {img.range}, but "
                    f"h(s({e.id})) = {vertex_map[e.source]} and h(r({e.id})) = {vertex_map[e.range]}"
                )

    @property
    def source_graph(self) -> Graph:
        return self.source.graph

    @property
    def target_graph(self) -> Graph:
        return self.target.graph

    def extend(self, g: Element) -> Element:
        """Image of an arbitrary element of G1: letterwise, then reduced."""
        out = self.target.identity(self.vertex_map[g.source])
        for l in g.letters:
            img = self.edge_map[l.edge]
            if l.ghost:
                img = self.target.inverse(img)
            nxt = self.target.mul(out, img)
            assert nxt is not None, "endpoint compatibility was checked at construction"
            out = nxt
        return out

    def __call__(self, g: Element) -> Element:
        return self.extend(g)

    def lines(self, name: str = "h") -> list[str]:
        out = [f"{name}({v}) = {w}" for v, w in self.vertex_map.items()]
        out += [f"{name}({e}) = {g}" for e, g in self.edge_map.items()]
        return out

    def to_text(self) -> str:
        return "\n".join(
            [f"map {v} -> {w}" for v, w in self.vertex_map.items()]
            + [f"map {e} -> {g}" for e, g in self.edge_map.items()]
        ) + "\n"


def load_hom(text: str, source: Graph, target: Graph) -> GroupoidHom:
    """Parse ``map <id> -> <word>`` lines; missing vertex images are inferred
    from edge endpoints and listed in ``hom.inferred``."""
    G2 = FreePathGroupoid(target)
    vmap: dict[str, str] = {}
    emap: dict[str, Element] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _MAP_LINE.match(line)
        if not m:
            raise HomFormatError(f"cannot parse {line!r}", lineno)
        name, word = m.group(1), m.group(2).strip()
        if name in vmap or name in emap:
            raise HomFormatError(f"{name} is mapped twice", lineno)
        try:
            img = G2.parse_word(word)
        except WordError as exc:
            raise HomFormatError(str(exc), lineno) from None
        if source.has_vertex(name):
            if not img.is_identity:
                raise HomFormatError(f"vertex {name} must map to a vertex, not {img}", lineno)
            vmap[name] = img.source
        elif source.has_edge(name):
            emap[name] = img
        else:
            raise HomFormatError(f"{name} is not a vertex or edge of the source graph", lineno)
    inferred = []
    for e in source.edges:
        if e.id not in emap:
            continue
        img = emap[e.id]
        for v, w in ((e.source, img.source), (e.range, img.range)):
            if v in vmap:
                if vmap[v] != w:
                    raise HomFormatError(
                        f"h({e.id}) = {img} forces h({v}) = {w}, but it is mapped to {vmap[v]}"
                    )
            else:
                vmap[v] = w
                inferred.append(f"h({v}) = {w} (from h({e.id}))")
    try:
        hom = GroupoidHom(source, target, vmap, emap)
    except InputError as exc:
        raise HomFormatError(str(exc)) from None
    hom.inferred = inferred
    return hom


# hypothesis checks


def check_hypotheses_49(h: GroupoidHom) -> Report:
    """Decide whether h is injective on W1 with h(W1) = W2.

    Both hold exactly when the vertex and edge maps are bijections onto the
    target's vertices and edges, i.e. h comes from a graph isomorphism.
    """
    report = Report("injective on W1 and h(W1) = W2")
    E1, E2 = h.source_graph, h.target_graph
    vimg = list(h.vertex_map.values())
    seen: dict[str, str] = {}
    for v, w in h.vertex_map.items():
        if w in seen:
            report.fail(f"h({seen[w]}) = h({v}) = {w}: not injective")
        seen.setdefault(w, v)
    for w in E2.vertices:
        report.check(w in vimg, f"vertex {w} of E2 is not the image of a vertex")
    edge_seen: dict[Element, str] = {}
    for e, img in h.edge_map.items():
        single = img.length == 1 and not img.letters[0].ghost
        if not report.check(single, f"h({e}) = {img} is not an edge of E2"):
            if img.is_identity:
                report.fail(f"h({e}) = h({E1.edge(e).source}) = {img}: not injective")
            continue
        if img in edge_seen:
            report.fail(f"h({edge_seen[img]}) = h({e}) = {img}: not injective")
        edge_seen.setdefault(img, e)
    hit = {g.letters[0].edge for g in edge_seen}
    for f in E2.edge_ids:
        report.check(f in hit, f"edge {f} of E2 is not the image of an edge")
    if not report.passed and E1.is_acyclic():
        # W1 is finite: list target edges genuinely missing from h(W1)
        images = {h.extend(path_element(p)) for p in E1.enumerate_paths(E1.longest_path_length())}
        missing = [f for f in E2.edge_ids if path_element(E2.path([f])) not in images]
        report.data["edges_not_in_image"] = missing
        for f in missing:
            report.note(f"{f} is not in h(W1)")
    return report


def check_hypotheses_bounded(h: GroupoidHom, bound: int) -> Report:
    """Enumerative semi-decision of the same hypotheses up to path length ``bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    report = Report(f"injective on W1 and h(W1) = W2 up to length {bound}")
    E1, E2 = h.source_graph, h.target_graph
    images: dict[Element, Path] = {}
    for p in E1.enumerate_paths(bound):
        img = h.extend(path_element(p))
        report.check(is_path_element(img), f"h({p}) = {img} is not in W2")
        if img in images:
            report.fail(f"h({images[img]}) = h({p}) = {img}: not injective")
        else:
            images[img] = p
    unhit = []
    for q in E2.enumerate_paths(bound):
        if not report.check(path_element(q) in images, f"{q} not hit by h(W1) up to length {bound}"):
            unhit.append(str(q))
    report.data["unhit"] = unhit
    return report


# graded isomorphisms


@dataclass
class GradedIsoWitness:
    hom: GroupoidHom
    source_ring: SkewRing
    target_ring: SkewRing
    images: dict[str, RingElement]
    degrees: dict[str, SForm]
    report: Report = field(default_factory=lambda: Report("graded homomorphism"))
    strict: bool = True


class BuildError(ValueError):
    pass


def _generator_degree(ring: SkewRing, name: str) -> SForm:
    return ring.groupoid.sform(name)


def build_graded_iso(h: GroupoidHom, strict: bool = True, field_: Field = QQ, samples: int = 100) -> GradedIsoWitness:
    """Images of the source generators under phi, then verified.

    In strict mode the hypotheses of the construction must hold first. With
    ``strict=False`` any homomorphism whose edge images lie in S2 yields a
    candidate, verified on generators only.
    """
    if strict:
        hyp = check_hypotheses_49(h)
        if not hyp.passed:
            raise BuildError("hypotheses fail: " + "; ".join(hyp.failures))
    R1 = SkewRing(h.source_graph, field_)
    R2 = SkewRing(h.target_graph, field_)
    images: dict[str, RingElement] = {}
    degrees: dict[str, SForm] = {}
    for name in R1.generators():
        g = _generator_degree(R1, name).element
        s = h.target.classify(h.extend(g))
        if s is None:
            raise BuildError(f"h({name}) = {h.extend(g)} is not in S2; D_h({name}) is zero")
        images[name] = R2.monomial(s)
        degrees[name] = s
    w = GradedIsoWitness(h, R1, R2, images, degrees, strict=strict)
    w.report = verify_images(w, samples=samples)
    return w


def verify_images(w: GradedIsoWitness, samples: int = 100, seed: int = 0) -> Report:
    """Relations of E1 on the images, the graded condition, and grading
    multiplicativity on ``samples`` random generator products."""
    h, R1, R2 = w.hom, w.source_ring, w.target_ring
    report = Report("graded homomorphism")
    rel = check_lpa_relations(h.source_graph, w.images, R2, "relations of E1 on images")
    report.merge(rel)
    for name, img in w.images.items():
        want = h.target.classify(h.extend(_generator_degree(R1, name).element))
        report.check(
            want is not None and img.degrees() == [want],
            f"phi({name}) = {img.render()} is not homogeneous of degree h({name}) = {want}",
        )
    rng = random.Random(seed)
    names = list(w.images)
    G1 = h.source
    for _ in range(samples):
        word = [rng.choice(names) for _ in range(rng.randint(2, 4))]
        deg: Optional[Element] = _generator_degree(R1, word[0]).element
        img = w.images[word[0]]
        for n in word[1:]:
            if deg is not None:
                deg = G1.mul(deg, _generator_degree(R1, n).element)
            img = img * w.images[n]
        if not img:
            report.check(True, "")
            continue
        ok = deg is not None
        if ok:
            want = h.target.classify(h.extend(deg))
            ok = want is not None and img.degrees() == [want]
        report.check(ok, lambda: f"phi({' '.join(word)}) = {img.render()} has degree not h({deg})")
    report.note(f"{samples} random generator products checked for grading")
    return report


def apply_images(x: RingElement, images: dict[str, RingElement], ring: SkewRing) -> RingElement:
    """Image of ``x`` under the homomorphism fixed by generator ``images``."""
    return evaluate(parse_expr(x.to_expr()), ring, images)


def find_inverse(w: GradedIsoWitness, max_word_len: int = 4) -> Optional[GroupoidHom]:
    """A homomorphism k: G2 -> G1 with k o h and h o k the identity on generators,
    searched among elements of G1 up to ``max_word_len``; None if not found."""
    h = w.hom
    G1, G2 = h.source, h.target
    pre: dict[Element, Element] = {}
    for g in G1.elements(max_word_len):
        pre.setdefault(h.extend(g), g)
    vmap, emap = {}, {}
    for v in G2.graph.vertices:
        g = pre.get(G2.identity(v))
        if g is None:
            return None
        vmap[v] = g.source
    for f in G2.graph.edge_ids:
        g = pre.get(path_element(G2.graph.path([f])))
        if g is None:
            return None
        emap[f] = g
    try:
        k = GroupoidHom(G2.graph, G1.graph, vmap, emap)
    except InputError:
        return None
    for g in G1.elements(1):
        if k.extend(h.extend(g)) != g:
            return None
    return k


def check_inverse(w: GradedIsoWitness, max_word_len: int = 4) -> Report:
    """Build phi's candidate inverse from an inverse groupoid map and check
    both composites fix every generator."""
    report = Report("inverse on generators")
    k = find_inverse(w, max_word_len)
    if k is None:
        report.fail(f"no inverse groupoid homomorphism found up to word length {max_word_len}")
        return report
    report.note("inverse: " + ", ".join(k.lines("k")))
    back: dict[str, RingElement] = {}
    for name in w.target_ring.generators():
        g = _generator_degree(w.target_ring, name).element
        t = k.target.classify(k.extend(g))
        if t is None:
            report.fail(f"k({name}) = {k.extend(g)} is not in S1")
            return report
        back[name] = w.source_ring.monomial(t)
    report.merge(check_lpa_relations(k.source_graph, back, w.source_ring, "relations of E2 on inverse images"))
    for name, x in w.source_ring.generators().items():
        got = apply_images(w.images[name], back, w.source_ring)
        report.check(got == x, lambda: f"psi(phi({name})) = {got.render()}")
    for name, y in w.target_ring.generators().items():
        got = apply_images(back[name], w.images, w.target_ring)
        report.check(got == y, lambda: f"phi(psi({name})) = {got.render()}")
    return report


def check_converse_410(h: GroupoidHom, w: GradedIsoWitness, bound: int) -> Report:
    """Confirm, up to ``bound``, that h is injective on W1 and h(S1) = S2.

    Preconditions (condition (L) on E1, a verified witness, vertex units sent
    onto vertex units) are reported as failures rather than raised.
    """
    report = Report(f"converse: injective on W1 and h(S1) = S2 up to {bound}")
    E1, E2 = h.source_graph, h.target_graph
    pre_ok = True
    if not E1.has_condition_l():
        cyc = E1.cycles_without_exit()[0]
        report.fail(f"precondition: E1 fails condition (L); cycle {' '.join(cyc)} has no exit")
        pre_ok = False
    if not w.report.passed:
        report.fail("precondition: witness is not verified")
        pre_ok = False
    units1 = {w.images[v] for v in E1.vertices}
    units2 = {w.target_ring.gen_vertex(v) for v in E2.vertices}
    if units1 != units2:
        report.fail("precondition: phi does not send vertex units onto vertex units")
        pre_ok = False
    report.data["preconditions"] = pre_ok
    if not pre_ok:
        return report

    seen: dict[Element, Path] = {}
    for p in E1.enumerate_paths(bound):
        img = h.extend(path_element(p))
        if img in seen:
            report.fail(f"h({seen[img]}) = h({p}) = {img}: not injective on W1")
        else:
            report.check(True, "")
            seen[img] = p
    S1 = h.source.enumerate_S(bound)
    S2 = set(h.target.enumerate_S(bound))
    image: set[SForm] = set()
    for s in S1:
        t = h.target.classify(h.extend(s.element))
        if report.check(t is not None, f"h({s}) = {h.extend(s.element)} is not in S2"):
            image.add(t)
    complete = (
        E1.is_acyclic() and E2.is_acyclic()
        and bound >= E1.longest_path_length() and bound >= E2.longest_path_length()
    )
    missing = sorted(S2 - image, key=SForm.sort_key)
    extra = sorted(image - S2, key=SForm.sort_key)
    if complete:
        for s in missing:
            report.fail(f"{s} in S2 is not h of anything in S1")
        for s in extra:
            report.fail(f"h-image {s} is not in S2")
        report.check(len(S1) == len(S2), f"|S1| = {len(S1)} but |S2| = {len(S2)}")
    else:
        for s in missing:
            report.note(f"{s} not reached from S1 up to {bound} (enumeration incomplete)")
    report.data.update(S1_size=len(S1), S2_size=len(S2), complete=complete)
    report.note(f"|S1| = {len(S1)}, |S2| = {len(S2)}, |h(S1)| = {len(image)}")
    return report


def check_corollary_411(h: GroupoidHom, w: GradedIsoWitness, bound: int = 6) -> Report:
    """If phi maps edge units onto edge units, then h(W1) = W2 (checked up to
    ``bound``); otherwise record that the hypothesis fails."""
    report = Report("edge units preserved implies h(W1) = W2")
    E1, E2 = h.source_graph, h.target_graph
    edge_imgs = {w.images[e] for e in E1.edge_ids}
    targets = {w.target_ring.gen_edge(f) for f in E2.edge_ids}
    preserved = edge_imgs == targets
    report.data["hypothesis"] = preserved
    bounded = check_hypotheses_bounded(h, bound)
    report.data["unhit"] = bounded.data["unhit"]
    if not preserved:
        report.note("hypothesis fails: phi({1_e delta_e}) != {1_f delta_f}")
        for q in bounded.data["unhit"]:
            report.note(f"h(W1) != W2: {q} not hit up to length {bound}")
        return report
    for e, img in h.edge_map.items():
        report.check(img.length == 1 and not img.letters[0].ghost, f"h({e}) = {img} is not an edge")
    for q in bounded.data["unhit"]:
        report.fail(f"{q} not hit by h(W1) up to length {bound}")
    return report
