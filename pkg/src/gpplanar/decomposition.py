"""Decomposition of a planar graph product into planar pieces.

A plan is a binary tree.  Leaves are pieces whose Cayley graphs are planar
on their own: an outerplanar graph of order-2 vertices, a single vertex, or a
path ``v1 - v - v2`` whose ends have order 2.  Internal nodes glue two
subtrees by a free product (disjoint, no edges between them) or by an
amalgam over one shared order-2 vertex.  Both gluings preserve planarity of
the Cayley graph, so a valid plan certifies the verdict of :func:`decide`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Mapping, Union

from .decider import decide, to_simple_graph
from .graph_model import ProductGraph, connected_components, induced_subgraph
from .planarity import is_outerplanar

__all__ = [
    "PlanError",
    "FreeProduct",
    "AmalgamOverZ2",
    "OuterplanarZ2Graph",
    "IsolatedVertex",
    "SpokePath",
    "DecompositionPlan",
    "plan",
    "validate_plan",
    "leaves",
    "plan_to_json",
    "plan_from_json",
    "plan_outline",
]


class PlanError(ValueError):
    """The graph does not admit a plan (its Cayley graph is not planar)."""


@dataclass(frozen=True)
class OuterplanarZ2Graph:
    members: tuple[str, ...]

    def vertices(self) -> frozenset[str]:
        return frozenset(self.members)


@dataclass(frozen=True)
class IsolatedVertex:
    vertex: str

    def vertices(self) -> frozenset[str]:
        return frozenset((self.vertex,))


@dataclass(frozen=True)
class SpokePath:
    """``first - center - second``; ``second`` is None for a single spoke."""

    center: str
    first: str
    second: str | None = None

    def ends(self) -> tuple[str, ...]:
        return (self.first,) if self.second is None else (self.first, self.second)

    def vertices(self) -> frozenset[str]:
        return frozenset((self.center, *self.ends()))


@dataclass(frozen=True)
class FreeProduct:
    left: DecompositionPlan
    right: DecompositionPlan

    def vertices(self) -> frozenset[str]:
        return self.left.vertices() | self.right.vertices()


@dataclass(frozen=True)
class AmalgamOverZ2:
    vertex: str
    left: DecompositionPlan
    right: DecompositionPlan

    def vertices(self) -> frozenset[str]:
        return self.left.vertices() | self.right.vertices()


DecompositionPlan = Union[FreeProduct, AmalgamOverZ2, OuterplanarZ2Graph, IsolatedVertex, SpokePath]


def leaves(p: DecompositionPlan) -> Iterator[DecompositionPlan]:
    if isinstance(p, (FreeProduct, AmalgamOverZ2)):
        yield from leaves(p.left)
        yield from leaves(p.right)
    else:
        yield p


def _z2_leaf(vs: frozenset[str]) -> DecompositionPlan:
    if len(vs) == 1:
        return IsolatedVertex(next(iter(vs)))
    return OuterplanarZ2Graph(tuple(sorted(vs)))


def _amalgam(u: str, left: DecompositionPlan, right: DecompositionPlan) -> DecompositionPlan:
    # gluing onto the bare vertex {u} changes nothing
    if left.vertices() == {u}:
        return right
    if right.vertices() == {u}:
        return left
    return AmalgamOverZ2(u, left, right)


def plan(g: ProductGraph) -> DecompositionPlan:
    """Build a plan by attaching the order>2 vertices to the order-2 part
    one at a time in ascending id order.

    >>> g = ProductGraph({"a": 2, "v": 4, "b": 2}, [("a", "v"), ("v", "b")])
    >>> plan(g)
    SpokePath(center='v', first='a', second='b')
    """
    verdict = decide(g)
    if not verdict.planar:
        raise PlanError(f"Cayley graph is not planar (fails {', '.join(verdict.conditions())})")
    twos = [v for v in g.vertices if g.order(v) == 2]
    # one entry per connected component of the part attached so far;
    # untouched order-2 components keep plan None until the end
    parts: list[tuple[frozenset[str], DecompositionPlan | None]] = [
        (frozenset(c), None) for c in connected_components(induced_subgraph(g, twos))
    ]

    def take(x: str) -> tuple[frozenset[str], DecompositionPlan]:
        for i, (vs, p) in enumerate(parts):
            if x in vs:
                del parts[i]
                return vs, p if p is not None else _z2_leaf(vs)
        raise AssertionError(f"{x!r} is not attached yet")

    for v in g.vertices:
        if g.order(v) == 2:
            continue
        link = sorted(g.neighbors(v))
        if not link:
            parts.append((frozenset((v,)), IsolatedVertex(v)))
        elif len(link) == 1:
            (v1,) = link
            vs, p = take(v1)
            parts.append((vs | {v}, _amalgam(v1, p, SpokePath(v, v1))))
        else:
            v1, v2 = link
            vs1, p1 = take(v1)
            vs2, p2 = take(v2)
            inner = _amalgam(v2, SpokePath(v, v1, v2), p2)
            parts.append((vs1 | vs2 | {v}, _amalgam(v1, p1, inner)))

    pure = frozenset().union(*(vs for vs, p in parts if p is None))
    pieces = [(min(vs), p) for vs, p in parts if p is not None]
    if pure:
        pieces.append((min(pure), _z2_leaf(pure)))
    pieces.sort(key=lambda t: t[0])
    if not pieces:
        raise PlanError("empty graph has no plan")
    out = pieces[0][1]
    for _, p in pieces[1:]:
        out = FreeProduct(out, p)
    return out


class _Invalid(Exception):
    pass


def _no_edges_between(g: ProductGraph, a: frozenset[str], b: frozenset[str]) -> bool:
    return not any(g.neighbors(x) & b for x in a)


def _check(g: ProductGraph, p: DecompositionPlan) -> frozenset[str]:
    if isinstance(p, (FreeProduct, AmalgamOverZ2)):
        a, b = _check(g, p.left), _check(g, p.right)
        if isinstance(p, FreeProduct):
            if a & b or not _no_edges_between(g, a, b):
                raise _Invalid
        else:
            u = p.vertex
            if a & b != {u} or g.order(u) != 2:
                raise _Invalid
            if not _no_edges_between(g, a - {u}, b - {u}):
                raise _Invalid
        return a | b
    vs = p.vertices()
    if not vs <= set(g.vertices):
        raise _Invalid
    if isinstance(p, IsolatedVertex):
        return vs
    if isinstance(p, OuterplanarZ2Graph):
        if len(set(p.members)) != len(p.members) or any(g.order(x) != 2 for x in vs):
            raise _Invalid
        if not is_outerplanar(to_simple_graph(induced_subgraph(g, vs))[0]):
            raise _Invalid
        return vs
    if isinstance(p, SpokePath):
        ends = p.ends()
        if len(vs) != 1 + len(ends):
            raise _Invalid
        for x in ends:
            if g.order(x) != 2 or not g.has_edge(p.center, x):
                raise _Invalid
        if len(ends) == 2 and g.has_edge(*ends):
            raise _Invalid
        return vs
    raise _Invalid


def validate_plan(g: ProductGraph, p: DecompositionPlan) -> bool:
    """True iff the leaves are valid pieces of ``g``, every gluing meets its
    side conditions, and the whole tree covers ``g``.

    Side conditions at every node forbid edges between the two subtrees
    (outside the amalgam vertex), so together with the leaf checks every
    edge of ``g`` lies inside exactly one leaf.
    """
    try:
        return _check(g, p) == frozenset(g.vertices)
    except (_Invalid, KeyError):
        return False


# -- export ----------------------------------------------------------------------


def plan_to_json(p: DecompositionPlan) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": type(p).__name__, "vertices": sorted(p.vertices())}
    if isinstance(p, AmalgamOverZ2):
        out["vertex"] = p.vertex
    if isinstance(p, (FreeProduct, AmalgamOverZ2)):
        out["parts"] = [plan_to_json(p.left), plan_to_json(p.right)]
    elif isinstance(p, IsolatedVertex):
        out["vertex"] = p.vertex
    elif isinstance(p, SpokePath):
        out["center"] = p.center
        out["ends"] = list(p.ends())
    return out


def plan_from_json(data: Mapping[str, Any]) -> DecompositionPlan:
    kind = data.get("kind")
    if kind in ("FreeProduct", "AmalgamOverZ2"):
        left, right = (plan_from_json(x) for x in data["parts"])
        if kind == "FreeProduct":
            return FreeProduct(left, right)
        return AmalgamOverZ2(str(data["vertex"]), left, right)
    if kind == "OuterplanarZ2Graph":
        return OuterplanarZ2Graph(tuple(str(x) for x in data["vertices"]))
    if kind == "IsolatedVertex":
        return IsolatedVertex(str(data["vertex"]))
    if kind == "SpokePath":
        ends = [str(x) for x in data["ends"]]
        if len(ends) not in (1, 2):
            raise ValueError("a spoke path has one or two ends")
        return SpokePath(str(data["center"]), ends[0], ends[1] if len(ends) == 2 else None)
    raise ValueError(f"unknown plan node kind {kind!r}")


def _label(p: DecompositionPlan) -> str:
    if isinstance(p, FreeProduct):
        return "free product"
    if isinstance(p, AmalgamOverZ2):
        return f"amalgam over {p.vertex}"
    if isinstance(p, OuterplanarZ2Graph):
        return f"outerplanar order-2 graph {{{', '.join(p.members)}}}"
    if isinstance(p, IsolatedVertex):
        return f"vertex {p.vertex}"
    return "spoke path " + " - ".join((p.first, p.center, *(() if p.second is None else (p.second,))))


def plan_outline(p: DecompositionPlan) -> str:
    """Indented one-node-per-line rendering."""
    lines: list[str] = []

    def walk(q: DecompositionPlan, depth: int) -> None:
        lines.append("  " * depth + _label(q))
        if isinstance(q, (FreeProduct, AmalgamOverZ2)):
            walk(q.left, depth + 1)
            walk(q.right, depth + 1)

    walk(p, 0)
    return "\n".join(lines) + "\n"
