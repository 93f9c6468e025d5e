"""Command-line front end.

Exit codes: 0 success / true / pass, 1 false / fail, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FilePath
from typing import Optional, Sequence

from .cylinder import check_partial_action_axioms
from .errors import InputError
from .expr import eval_expression
from .graph import Graph, load_graph
from .iso import (
    BuildError,
    build_graded_iso,
    check_converse_410,
    check_corollary_411,
    check_hypotheses_49,
    check_hypotheses_bounded,
    check_inverse,
    load_hom,
)
from .report import Report
from .scalars import field_from_spec
from .skewring import SkewRing


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.payload: dict = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def report(self, r: Report) -> None:
        self.lines.extend(r.lines())
        self.payload.setdefault("reports", []).append(r.to_dict())

    def flush(self, status: int) -> int:
        if self.as_json:
            self.payload["exit"] = status
            print(json.dumps(self.payload, indent=2, sort_keys=True, ensure_ascii=False))
        else:
            for l in self.lines:
                print(l)
        return status


def _read_graph(path: str) -> Graph:
    return load_graph(FilePath(path).read_text(encoding="utf-8"))


def _ring(args) -> SkewRing:
    return SkewRing(_read_graph(args.graph), field_from_spec(args.field))


def cmd_normalize(args, out: _Out) -> int:
    ring = _ring(args)
    x = eval_expression(ring, args.expr)
    out.line(x.render())
    out.line(f"expr: {x.to_expr()}")
    out.payload.update(element=x.render(), expr=x.to_expr(), terms=[json.loads(r) for r in x.to_json().splitlines()])
    return 0


def cmd_eq(args, out: _Out) -> int:
    ring = _ring(args)
    x = eval_expression(ring, args.left)
    y = eval_expression(ring, args.right)
    equal = x == y
    out.line("equal" if equal else "not equal")
    if not equal:
        out.line(f"  left:  {x.render()}")
        out.line(f"  right: {y.render()}")
    out.payload.update(equal=equal, left=x.render(), right=y.render())
    return 0 if equal else 1


def cmd_relations(args, out: _Out) -> int:
    r = _ring(args).verify_relations()
    out.report(r)
    return 0 if r.passed else 1


def cmd_axioms(args, out: _Out) -> int:
    ring = _ring(args)
    r = check_partial_action_axioms(ring.space, args.depth)
    r.note(f"|S| up to word length {args.depth}: {r.data['S_size']}")
    out.report(r)
    return 0 if r.passed else 1


def cmd_condition_l(args, out: _Out) -> int:
    g = _read_graph(args.graph)
    bad = g.cycles_without_exit()
    ok = not bad
    out.line(f"condition (L): {'holds' if ok else 'fails'}")
    for c in bad:
        out.line(f"  cycle without exit: {' '.join(c)}")
    out.payload.update(condition_l=ok, cycles_without_exit=[list(c) for c in bad])
    return 0 if ok else 1


def cmd_groupoid_mul(args, out: _Out) -> int:
    ring = SkewRing(_read_graph(args.graph))
    G = ring.groupoid
    g, h = G.parse_word(args.left), G.parse_word(args.right)
    gh = G.mul(g, h)
    if gh is None:
        out.line(f"not composable: d({g}) = {g.range} but eps({h}) = {h.source}")
        out.payload.update(composable=False)
        return 1
    s = G.classify(gh)
    out.line(str(gh))
    out.line(f"source {gh.source}, range {gh.range}, " + (f"in S as {s.kind}" if s else "not in S"))
    out.payload.update(composable=True, product=str(gh), source=gh.source, range=gh.range, s_kind=s.kind if s else None)
    return 0


def _load_hom(args):
    g1, g2 = _read_graph(args.source), _read_graph(args.target)
    return load_hom(FilePath(args.hom).read_text(encoding="utf-8"), g1, g2)


def _print_hom(h, out: _Out) -> None:
    for l in h.lines():
        out.line(l)
    for l in h.inferred:
        out.line(f"  inferred {l}")
    out.payload["hom"] = h.lines()


def cmd_hom_check(args, out: _Out) -> int:
    h = _load_hom(args)
    _print_hom(h, out)
    exact = check_hypotheses_49(h)
    bounded = check_hypotheses_bounded(h, args.bound)
    out.report(exact)
    out.report(bounded)
    return 0 if exact.passed else 1


def cmd_iso(args, out: _Out) -> int:
    h = _load_hom(args)
    _print_hom(h, out)
    field = field_from_spec(args.field)
    hyp = check_hypotheses_49(h)
    out.report(hyp)
    if not hyp.passed and not args.unchecked:
        out.line("strict mode: hypotheses fail, not building phi (use --unchecked for a candidate)")
        return 1
    try:
        w = build_graded_iso(h, strict=not args.unchecked, field_=field)
    except BuildError as exc:
        out.line(f"build failed: {exc}")
        out.payload["build_error"] = str(exc)
        return 1
    out.line("mode: " + ("unchecked (candidate verified on generators)" if args.unchecked else "strict"))
    for name, img in w.images.items():
        out.line(f"phi({name}) = {img.render()}")
    out.payload["images"] = {n: x.render() for n, x in w.images.items()}
    out.report(w.report)
    inv = check_inverse(w)
    out.report(inv)
    conv = check_converse_410(h, w, args.bound)
    out.report(conv)
    cor = check_corollary_411(h, w, args.bound)
    out.report(cor)
    return 0 if w.report.passed and inv.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lpagroupoid", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        return sp

    sp = add("normalize", cmd_normalize, "evaluate an expression to canonical form")
    sp.add_argument("graph")
    sp.add_argument("expr")
    sp.add_argument("--field", default="q")

    sp = add("eq", cmd_eq, "decide equality of two expressions")
    sp.add_argument("graph")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--field", default="q")

    sp = add("relations", cmd_relations, "check the Leavitt path algebra relations")
    sp.add_argument("graph")
    sp.add_argument("--field", default="q")

    sp = add("axioms", cmd_axioms, "check the partial action axioms")
    sp.add_argument("graph")
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--field", default="q")

    sp = add("condition-l", cmd_condition_l, "does every cycle have an exit?")
    sp.add_argument("graph")

    sp = add("groupoid-mul", cmd_groupoid_mul, "multiply two groupoid words")
    sp.add_argument("graph")
    sp.add_argument("left")
    sp.add_argument("right")

    for name, fn, help_ in (
        ("hom-check", cmd_hom_check, "check injectivity on W1 and h(W1) = W2"),
        ("iso", cmd_iso, "build and verify the graded isomorphism induced by a hom"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("source")
        sp.add_argument("target")
        sp.add_argument("hom")
        sp.add_argument("--bound", type=int, default=6)
        if name == "iso":
            sp.add_argument("--unchecked", action="store_true")
            sp.add_argument("--field", default="q")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.json)
    try:
        status = args.fn(args, out)
    except (InputError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return out.flush(status)


if __name__ == "__main__":
    sys.exit(main())
