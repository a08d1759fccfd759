"""Finite balls of the undirected simple Cayley graph of G(Gamma).

The generating set is ``{a_v}`` with ``a_v`` the exponent-1 syllable of ``v``;
edges join ``x`` and ``x * a_v``.  Direction and edge multiplicity are dropped,
which does not affect planarity.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable

from .graph_model import GraphError, ProductGraph, induced_subgraph
from .planarity import SimpleGraph
from .words import IDENTITY, NormalForm, format_word, parse_word, right_multiply

__all__ = [
    "DEFAULT_MAX_VERTICES",
    "BallTooLarge",
    "CayleyBall",
    "ball",
    "sphere_sizes",
    "restrict_to_subgroup",
    "ball_to_json",
    "ball_from_json",
    "ball_to_dot",
]

DEFAULT_MAX_VERTICES = 200_000


class BallTooLarge(RuntimeError):
    """The ball would exceed the configured vertex cap."""


@dataclass(frozen=True)
class CayleyBall:
    graph: ProductGraph
    radius: int
    vertices: tuple[NormalForm, ...]
    # (i, j, generating vertex) with i < j
    edges: tuple[tuple[int, int, str], ...]
    distance: tuple[int, ...]
    index: dict[NormalForm, int] = field(repr=False, compare=False, hash=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self.index:
            self.index.update((x, i) for i, x in enumerate(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, x: object) -> bool:
        return x in self.index

    def to_simple_graph(self) -> SimpleGraph:
        return SimpleGraph(len(self.vertices), frozenset((i, j) for i, j, _ in self.edges))

    def edge_set(self) -> set[frozenset[NormalForm]]:
        return {frozenset((self.vertices[i], self.vertices[j])) for i, j, _ in self.edges}

    def has_edge(self, x: NormalForm, y: NormalForm) -> bool:
        i, j = self.index.get(x), self.index.get(y)
        if i is None or j is None:
            return False
        return (min(i, j), max(i, j)) in self._pairs

    @property
    def _pairs(self) -> set[tuple[int, int]]:
        cached = self.__dict__.get("_pair_cache")
        if cached is None:
            cached = {(i, j) for i, j, _ in self.edges}
            object.__setattr__(self, "_pair_cache", cached)
        return cached


def _generators(g: ProductGraph) -> list[tuple[str, int]]:
    gens = []
    for v in g.vertices:
        gens.append((v, 1))
        if g.order(v) > 2:
            gens.append((v, -1))
    return gens


def ball(g: ProductGraph, r: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> CayleyBall:
    """All elements within word distance ``r`` of the identity, with every
    Cayley edge between them.

    >>> z5 = ProductGraph({"a": 5})
    >>> b = ball(z5, 2)
    >>> len(b), len(b.edges)
    (5, 5)
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    gens = _generators(g)
    verts: list[NormalForm] = [IDENTITY]
    dist = [0]
    index = {IDENTITY: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if dist[i] == r:
            continue
        x = verts[i]
        for v, e in gens:
            y = right_multiply(g, x, v, e)
            if y not in index:
                if len(verts) >= max_vertices:
                    raise BallTooLarge(f"ball of radius {r} exceeds {max_vertices} vertices")
                index[y] = len(verts)
                verts.append(y)
                dist.append(dist[i] + 1)
                queue.append(index[y])
    edges = set()
    for i, x in enumerate(verts):
        for v in g.vertices:
            j = index.get(right_multiply(g, x, v, 1))
            if j is not None and j != i:
                edges.add((min(i, j), max(i, j), v))
    return CayleyBall(g, r, tuple(verts), tuple(sorted(edges)), tuple(dist), index)


def sphere_sizes(g: ProductGraph, r: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[int]:
    b = ball(g, r, max_vertices)
    sizes = [0] * (r + 1)
    for d in b.distance:
        sizes[d] += 1
    return sizes


def restrict_to_subgroup(b: CayleyBall, vs: Iterable[str]) -> CayleyBall:
    """Sub-ball on the elements supported on ``vs`` (a ball of G(<vs>))."""
    vs = set(vs)
    sub = induced_subgraph(b.graph, vs)
    keep = [i for i, x in enumerate(b.vertices) if all(v in vs for v, _ in x)]
    new = {old: k for k, old in enumerate(keep)}
    edges = tuple(
        (new[i], new[j], v) for i, j, v in b.edges if v in vs and i in new and j in new
    )
    return CayleyBall(
        sub,
        b.radius,
        tuple(b.vertices[i] for i in keep),
        edges,
        tuple(b.distance[i] for i in keep),
    )


# -- export ----------------------------------------------------------------------


def ball_to_json(b: CayleyBall) -> dict[str, Any]:
    from .graph_model import graph_to_json

    return {
        "graph": graph_to_json(b.graph),
        "radius": b.radius,
        "vertices": [format_word(x) for x in b.vertices],
        "distance": list(b.distance),
        "edges": [[i, j, v] for i, j, v in b.edges],
    }


def ball_from_json(data: dict[str, Any]) -> CayleyBall:
    from .graph_model import load_graph

    g = load_graph(json.dumps(data["graph"]))
    verts = tuple(parse_word(g, w) for w in data["vertices"])
    if len(set(verts)) != len(verts):
        raise GraphError("ball JSON lists an element twice")
    return CayleyBall(
        g,
        int(data["radius"]),
        verts,
        tuple((int(i), int(j), str(v)) for i, j, v in data["edges"]),
        tuple(int(d) for d in data["distance"]),
    )


def _dot_label(x: NormalForm) -> str:
    return format_word(x) or "1"


def ball_to_dot(b: CayleyBall, highlight: Iterable[NormalForm] = ()) -> str:
    marked = set(highlight)
    lines = ["graph cayley {"]
    for i, x in enumerate(b.vertices):
        style = ", style=filled, fillcolor=red" if x in marked else ""
        lines.append(f'  {i} [label="{_dot_label(x)}"{style}];')
    for i, j, v in b.edges:
        lines.append(f'  {i} -- {j} [label="{v}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
