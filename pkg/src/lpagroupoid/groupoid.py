"""The free path groupoid of a graph.

Elements are irreducible words over edges ``e`` and ghost edges ``e*``;
the identities are the vertices. The product concatenates composable words
and cancels ``e e*`` / ``e* e`` pairs, which for irreducible operands only
happens at the seam.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Union

from .errors import WordError
from .graph import Graph, Path


class Letter(NamedTuple):
    edge: str
    ghost: bool = False

    def inverse(self) -> Letter:
        return Letter(self.edge, not self.ghost)

    def __str__(self) -> str:
        return self.edge + "*" if self.ghost else self.edge


@dataclass(frozen=True)
class Element:
    """A groupoid element: an irreducible word from ``source`` to ``range``.

    ``source`` is eps(g) and ``range`` is d(g); an empty word is the identity
    at ``source == range``.
    """

    source: str
    range: str
    letters: tuple[Letter, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def length(self) -> int:
        return len(self.letters)

    def sort_key(self):
        if not self.letters:
            return (0, (), self.source)
        return (len(self.letters), tuple((l.edge, l.ghost) for l in self.letters), "")

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) if self.letters else self.source


@dataclass(frozen=True)
class SForm:
    """An element of S written as ``head tail*``.

    ``head`` and ``tail`` are paths with the same range whose last edges
    differ (or one of them is a vertex), so the word is already irreducible.
    The four shapes are reported by :attr:`kind`. Under the partial action,
    theta maps the cylinder of ``tail`` onto the cylinder of ``head`` by
    swapping the prefix.
    """

    head: Path
    tail: Path

    def __post_init__(self):
        if self.head.end != self.tail.end:
            raise ValueError(f"{self.head} and {self.tail} have different ranges")
        if self.head.edges and self.tail.edges and self.head.edges[-1] == self.tail.edges[-1]:
            raise ValueError("head and tail share a last edge; word is reducible")

    @property
    def kind(self) -> str:
        if self.head.is_vertex:
            return "IdVertex" if self.tail.is_vertex else "InvPath"
        return "Path" if self.tail.is_vertex else "PathPair"

    @property
    def source(self) -> str:
        return self.head.start

    @property
    def range(self) -> str:
        return self.tail.start

    def inverse(self) -> SForm:
        return SForm(self.tail, self.head)

    @cached_property
    def element(self) -> Element:
        letters = tuple(Letter(e) for e in self.head.edges)
        letters += tuple(Letter(e, True) for e in reversed(self.tail.edges))
        return Element(self.head.start, self.tail.start, letters)

    def sort_key(self):
        return self.element.sort_key()

    def __str__(self) -> str:
        return str(self.element)


def IdVertex(v: str) -> SForm:
    return SForm(Path(v, v), Path(v, v))


def PathForm(a: Path) -> SForm:
    if a.is_vertex:
        raise ValueError("PathForm needs a path of positive length")
    return SForm(a, Path(a.end, a.end))


def InvPath(a: Path) -> SForm:
    if a.is_vertex:
        raise ValueError("InvPath needs a path of positive length")
    return SForm(Path(a.end, a.end), a)


def PathPair(a: Path, b: Path) -> SForm:
    """``a b*``; a vertex on either side collapses to the one-sided forms."""
    return SForm(a, b)


class FreePathGroupoid:
    """The free path groupoid G of a finite graph."""

    def __init__(self, graph: Graph):
        self.graph = graph

    def __eq__(self, other):
        return isinstance(other, FreePathGroupoid) and self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)

    # letters and words

    def letter_source(self, l: Letter) -> str:
        e = self.graph.edge(l.edge)
        return e.range if l.ghost else e.source

    def letter_range(self, l: Letter) -> str:
        e = self.graph.edge(l.edge)
        return e.source if l.ghost else e.range

    def identity(self, v: str) -> Element:
        if not self.graph.has_vertex(v):
            raise WordError(f"unknown vertex {v!r}")
        return Element(v, v)

    def reduce(self, items: Iterable[Union[Letter, str]], anchor: Optional[str] = None) -> Element:
        """Irreducible form of a composable sequence of letters and vertices.

        Vertices in the sequence are absorbed. ``anchor`` names the base
        vertex when the sequence is empty or contains no vertex or letter to
        fix it; full cancellation lands on the first source.
        """
        stack: list[Letter] = []
        start: Optional[str] = None
        cur: Optional[str] = None
        for item in items:
            if isinstance(item, str):
                if not self.graph.has_vertex(item):
                    raise WordError(f"unknown vertex {item!r}")
                s = r = item
            else:
                if not self.graph.has_edge(item.edge):
                    raise WordError(f"unknown edge {item.edge!r}")
                s, r = self.letter_source(item), self.letter_range(item)
            if cur is None:
                start = s
            elif cur != s:
                raise WordError(f"{item} cannot follow a word ending at {cur}")
            cur = r
            if isinstance(item, str):
                continue
            if stack and stack[-1].edge == item.edge and stack[-1].ghost != item.ghost:
                stack.pop()
            else:
                stack.append(item)
        if start is None:
            if anchor is None:
                raise WordError("empty word needs an anchor vertex")
            return self.identity(anchor)
        if anchor is not None and anchor != start:
            raise WordError(f"word starts at {start}, not at anchor {anchor}")
        return Element(start, cur, tuple(stack))

    def parse_word(self, text: str) -> Element:
        """Parse ``e1 e2 e3* e4`` (or a vertex id) into a reduced element."""
        tokens = text.split()
        if not tokens:
            raise WordError("empty word")
        items: list[Union[Letter, str]] = []
        for tok in tokens:
            ghost = tok.endswith("*")
            name = tok[:-1] if ghost else tok
            if self.graph.has_edge(name):
                items.append(Letter(name, ghost))
            elif self.graph.has_vertex(name):
                if ghost:
                    raise WordError(f"ghost marker on vertex {name!r}")
                items.append(name)
            else:
                raise WordError(f"unknown identifier {name!r}")
        return self.reduce(items)

    # groupoid structure

    def mul(self, g: Element, h: Element) -> Optional[Element]:
        """``irr(gh)``, or None when ``d(g) != eps(h)``."""
        if g.range != h.source:
            return None
        a, b = g.letters, h.letters
        k = 0
        while k < min(len(a), len(b)) and a[len(a) - 1 - k] == b[k].inverse():
            k += 1
        letters = a[: len(a) - k] + b[k:]
        return Element(g.source, h.range, letters)

    def inverse(self, g: Element) -> Element:
        return Element(g.range, g.source, tuple(l.inverse() for l in reversed(g.letters)))

    def elements(self, max_len: int) -> list[Element]:
        """All elements of word length at most ``max_len``, sorted."""
        out = [Element(v, v) for v in self.graph.vertices]
        layer = [
            Element(self.letter_source(l), self.letter_range(l), (l,))
            for e in self.graph.edges
            for l in (Letter(e.id), Letter(e.id, True))
        ]
        for _ in range(max_len):
            out.extend(layer)
            nxt = []
            for g in layer:
                for e in self.graph.edges:
                    for l in (Letter(e.id), Letter(e.id, True)):
                        if self.letter_source(l) == g.range and l != g.letters[-1].inverse():
                            nxt.append(Element(g.source, self.letter_range(l), g.letters + (l,)))
            layer = nxt
        out.sort(key=Element.sort_key)
        return out

    # S

    def classify(self, g: Element) -> Optional[SForm]:
        """The S-form of ``g`` if ``X_g`` is nonempty, else None.

        In a finite graph every cylinder is nonempty, so ``g`` lies in S
        exactly when its word is some edges followed by some ghost edges.
        """
        letters = g.letters
        k = 0
        while k < len(letters) and not letters[k].ghost:
            k += 1
        if any(not l.ghost for l in letters[k:]):
            return None
        head_edges = tuple(l.edge for l in letters[:k])
        tail_edges = tuple(l.edge for l in reversed(letters[k:]))
        mid = g.source if k == 0 else self.letter_range(letters[k - 1])
        return SForm(Path(g.source, mid, head_edges), Path(g.range, mid, tail_edges))

    def to_element(self, s: SForm) -> Element:
        return s.element

    def reduced_pair(self, head: Path, tail: Path) -> SForm:
        """The S-form of the possibly reducible word ``head tail*``."""
        h, t = head.edges, tail.edges
        n = 0
        while n < min(len(h), len(t)) and h[-1 - n] == t[-1 - n]:
            n += 1
        if n == 0:
            return SForm(head, tail)
        h, t = h[: len(h) - n], t[: len(t) - n]
        end = self.graph.edge(h[-1]).range if h else head.start
        return SForm(Path(head.start, end, h), Path(tail.start, end, t))

    def sform(self, word: str) -> SForm:
        g = self.parse_word(word)
        s = self.classify(g)
        if s is None:
            raise WordError(f"{g} is not in S")
        return s

    def enumerate_S(self, max_len: int, max_word_len: Optional[int] = None) -> list[SForm]:
        """S-forms whose head and tail have length at most ``max_len``.

        ``max_word_len`` additionally bounds ``|head| + |tail|``.
        """
        paths = self.graph.enumerate_paths(max_len)
        by_end: dict[str, list[Path]] = {}
        for p in paths:
            by_end.setdefault(p.end, []).append(p)
        out = []
        for group in by_end.values():
            for a in group:
                for b in group:
                    if a.edges and b.edges and a.edges[-1] == b.edges[-1]:
                        continue
                    if max_word_len is not None and a.length + b.length > max_word_len:
                        continue
                    out.append(SForm(a, b))
        out.sort(key=SForm.sort_key)
        return out

    def format(self, g: Union[Element, SForm]) -> str:
        return str(g)
