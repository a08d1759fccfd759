"""Planarity of Cayley graphs of graph products of finite cyclic groups."""

from __future__ import annotations

from .cayley import BallTooLarge, CayleyBall, ball, restrict_to_subgroup, sphere_sizes
from .decider import ConditionViolation, Verdict, decide
from .decomposition import DecompositionPlan, plan, validate_plan
from .graph_model import AbelianProductGraph, GraphCertificate, GraphError, ProductGraph, load_graph
from .planarity import SimpleGraph, is_outerplanar, is_planar, kuratowski_witness, outerplanarity_witness
from .witnesses import SubdivisionWitness, verify_witness, witness_for
from .words import NormalForm, normalize, parse_word

__all__ = [
    "AbelianProductGraph",
    "BallTooLarge",
    "CayleyBall",
    "ConditionViolation",
    "DecompositionPlan",
    "GraphCertificate",
    "GraphError",
    "NormalForm",
    "ProductGraph",
    "SimpleGraph",
    "SubdivisionWitness",
    "Verdict",
    "ball",
    "decide",
    "is_outerplanar",
    "is_planar",
    "kuratowski_witness",
    "load_graph",
    "normalize",
    "outerplanarity_witness",
    "parse_word",
    "plan",
    "restrict_to_subgroup",
    "sphere_sizes",
    "validate_plan",
    "verify_witness",
    "witness_for",
]
