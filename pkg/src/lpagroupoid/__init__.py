"""Leavitt path algebras as partial skew groupoid rings over the free path groupoid."""

from .cylinder import CylFunction, PathSpace, check_alpha_identity, check_partial_action_axioms
from .expr import eval_expression, parse_expr
from .graph import Edge, Graph, Path, load_graph
from .groupoid import Element, FreePathGroupoid, Letter, SForm
from .iso import (
    GradedIsoWitness,
    GroupoidHom,
    build_graded_iso,
    check_converse_410,
    check_corollary_411,
    check_hypotheses_49,
    check_hypotheses_bounded,
    load_hom,
    verify_images,
)
from .scalars import QQ, PrimeField, field_from_spec
from .skewring import RingElement, SkewRing

__all__ = [
    "CylFunction", "PathSpace", "check_alpha_identity", "check_partial_action_axioms", "eval_expression", "parse_expr",
    "Edge", "Graph", "Path", "load_graph", "Element", "FreePathGroupoid", "Letter", "SForm",
    "GradedIsoWitness", "GroupoidHom", "build_graded_iso", "check_converse_410",
    "check_corollary_411", "check_hypotheses_49", "check_hypotheses_bounded", "load_hom",
    "verify_images", "QQ", "PrimeField", "field_from_spec", "RingElement", "SkewRing",
]
