"""Decide planarity of Cay(G(Gamma)) from the shape of Gamma.

The Cayley graph is planar exactly when

I.   the order-2 part of Gamma is outerplanar,
II.  no two order>2 vertices are adjacent,
III. every order>2 vertex has at most two neighbours, and two neighbours are
     never adjacent to each other,
IV.  no induced cycle passes through an order>2 vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from .graph_model import (
    GraphCertificate,
    ProductGraph,
    has_induced_cycle_through,
    split_by_order,
)
from .planarity import SimpleGraph, _outerplanar_edges, outerplanarity_witness

__all__ = [
    "CONDITIONS",
    "ConditionViolation",
    "Verdict",
    "to_simple_graph",
    "check_condition_i",
    "check_condition_ii",
    "check_condition_iii",
    "check_condition_iv",
    "decide",
]

CONDITIONS = ("I", "II", "III", "IV")


def to_simple_graph(g: ProductGraph) -> tuple[SimpleGraph, tuple[str, ...]]:
    """Index the vertices of ``g`` in id order."""
    ids = g.vertices
    pos = {v: i for i, v in enumerate(ids)}
    return SimpleGraph.from_edges(len(ids), [(pos[u], pos[w]) for u, w in g.sorted_edges()]), ids


class ConditionViolation:
    """One failed condition with the vertices that witness the failure.

    The locus of condition I is the vertex set of a K4 or K23 subdivision in
    the order-2 part.  That certificate costs many planarity runs, so it is
    extracted on first access rather than inside :func:`decide`.
    """

    __slots__ = ("condition", "_locus", "_certificate", "_source")

    def __init__(
        self,
        condition: str,
        locus: Sequence[str] | None = None,
        certificate: GraphCertificate | None = None,
        source: ProductGraph | None = None,
    ):
        if condition not in CONDITIONS:
            raise ValueError(f"unknown condition {condition!r}")
        self.condition = condition
        self._locus = tuple(locus) if locus is not None else None
        self._certificate = certificate
        self._source = source

    @property
    def certificate(self) -> GraphCertificate | None:
        if self._certificate is None and self._source is not None:
            sg, ids = to_simple_graph(self._source)
            c = outerplanarity_witness(sg)
            self._certificate = GraphCertificate(
                c.model,
                tuple(ids[i] for i in c.branch),
                tuple(tuple(ids[i] for i in p) for p in c.paths),
            )
        return self._certificate

    @property
    def locus(self) -> tuple[str, ...]:
        if self._locus is None:
            c = self.certificate
            assert c is not None
            seen = list(c.branch)
            for p in c.paths:
                seen.extend(x for x in p[1:-1] if x not in seen)
            self._locus = tuple(seen)
        return self._locus

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConditionViolation):
            return NotImplemented
        return (self.condition, self.locus, self.certificate) == (
            other.condition,
            other.locus,
            other.certificate,
        )

    def __repr__(self) -> str:
        return f"ConditionViolation({self.condition!r}, {list(self.locus)!r})"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"condition": self.condition, "locus": list(self.locus)}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ConditionViolation:
        cert = data.get("certificate")
        return cls(
            data["condition"],
            data["locus"],
            GraphCertificate.from_json(cert) if cert else None,
        )


@dataclass(frozen=True)
class Verdict:
    planar: bool
    violations: tuple[ConditionViolation, ...] = ()

    def __post_init__(self) -> None:
        if self.planar == bool(self.violations):
            raise ValueError("a verdict is planar exactly when it has no violations")

    def conditions(self) -> list[str]:
        return [v.condition for v in self.violations]

    def violation(self, condition: str) -> ConditionViolation | None:
        for v in self.violations:
            if v.condition == condition:
                return v
        return None

    def to_json(self) -> dict[str, Any]:
        return {"planar": self.planar, "violations": [v.to_json() for v in self.violations]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Verdict:
        return cls(bool(data["planar"]), tuple(ConditionViolation.from_json(v) for v in data["violations"]))


def _check_i(twos: ProductGraph) -> ConditionViolation | None:
    ids = twos.vertices
    pos = {v: i for i, v in enumerate(ids)}
    edges = [(pos[u], pos[w]) for u, w in twos.sorted_edges()]
    if _outerplanar_edges(len(ids), edges):
        return None
    return ConditionViolation("I", source=twos)


def check_condition_i(g: ProductGraph) -> ConditionViolation | None:
    """Order-2 part must be outerplanar; the locus is a K4/K23 subdivision."""
    return _check_i(split_by_order(g)[0])


def check_condition_ii(g: ProductGraph) -> ConditionViolation | None:
    """Order>2 part must be discrete; the locus is its least edge."""
    for u, w in g.sorted_edges():
        if g.order(u) > 2 and g.order(w) > 2:
            return ConditionViolation("II", (u, w))
    return None


def check_condition_iii(g: ProductGraph) -> ConditionViolation | None:
    """Links of order>2 vertices: empty, one vertex, or two non-adjacent ones.

    The locus is the offending vertex followed by its link.
    """
    for v in g.vertices:
        if g.order(v) == 2:
            continue
        nbrs = sorted(g.neighbors(v))
        if len(nbrs) > 2 or (len(nbrs) == 2 and g.has_edge(*nbrs)):
            return ConditionViolation("III", (v, *nbrs))
    return None


def check_condition_iv(g: ProductGraph) -> ConditionViolation | None:
    """No induced cycle through an order>2 vertex; the locus is such a cycle."""
    for v in g.vertices:
        if g.order(v) == 2:
            continue
        cycle = has_induced_cycle_through(g, v)
        if cycle is not None:
            return ConditionViolation("IV", cycle)
    return None


def decide(g: ProductGraph) -> Verdict:
    """Evaluate all four conditions (no short-circuit).

    >>> decide(ProductGraph({"u": 3, "w": 3}, [("u", "w")])).conditions()
    ['II']
    """
    twos, big = split_by_order(g)
    found = [_check_i(twos)]
    if len(big):
        # II to IV only concern order>2 vertices
        found += [check_condition_ii(g), check_condition_iii(g), check_condition_iv(g)]
    violations = tuple(v for v in found if v is not None)
    return Verdict(not violations, violations)
