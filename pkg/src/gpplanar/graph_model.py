"""Vertex-labelled simplicial graphs and the graph predicates used by the decider.

A :class:`ProductGraph` is a finite simplicial graph whose vertices carry a
cyclic group ``Z_order``.  Vertex ids are opaque strings; lexicographic order
on ids is the tie-breaking order everywhere in the package.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping, Sequence

__all__ = [
    "GraphError",
    "InputError",
    "ProductGraph",
    "AbelianProductGraph",
    "GraphCertificate",
    "MODELS",
    "model_edges",
    "induced_subgraph",
    "split_by_order",
    "link",
    "connected_components",
    "has_induced_cycle_through",
    "is_induced_cycle",
    "expand_abelian",
    "graph_from_json",
    "graph_to_json",
    "load_graph",
]

_BAD_ID = re.compile(r"[\s^]")


class GraphError(ValueError):
    """Raised for structurally invalid graphs or unknown vertex ids."""


class InputError(GraphError):
    """Malformed input document; ``str(err)`` carries a line/position hint."""


def _check_id(v: Any) -> str:
    if not isinstance(v, str) or not v:
        raise GraphError(f"vertex id must be a non-empty string, got {v!r}")
    if _BAD_ID.search(v):
        # ids appear verbatim in the `id^e` word syntax
        raise GraphError(f"vertex id {v!r} may not contain whitespace or '^'")
    return v


class ProductGraph:
    """Graph product graph with cyclic vertex groups.

    >>> g = ProductGraph({"a": 2, "b": 3}, [("a", "b")])
    >>> g.order("b"), g.has_edge("b", "a")
    (3, True)
    """

    __slots__ = ("_orders", "_adj", "_edges", "_vertices", "_hash")

    def __init__(self, orders: Mapping[str, int], edges: Iterable[Sequence[str]] = ()):
        ords: dict[str, int] = {}
        for v, n in orders.items():
            _check_id(v)
            if isinstance(n, bool) or not isinstance(n, int) or n < 2:
                raise GraphError(f"order of vertex {v!r} must be an integer >= 2, got {n!r}")
            ords[v] = n
        adj: dict[str, set[str]] = {v: set() for v in ords}
        es: set[frozenset[str]] = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge must have two endpoints: {e!r}")
            u, w = e
            if u not in adj or w not in adj:
                raise GraphError(f"edge {e!r} uses an undeclared vertex")
            if u == w:
                raise GraphError(f"self-loop at {u!r}")
            key = frozenset((u, w))
            if key in es:
                raise GraphError(f"duplicate edge {sorted(key)!r}")
            es.add(key)
            adj[u].add(w)
            adj[w].add(u)
        self._orders = ords
        self._vertices = tuple(sorted(ords))
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._edges = frozenset(es)
        self._hash: int | None = None

    @property
    def vertices(self) -> tuple[str, ...]:
        """Vertex ids in lexicographic order."""
        return self._vertices

    @property
    def edges(self) -> frozenset[frozenset[str]]:
        return self._edges

    @property
    def orders(self) -> dict[str, int]:
        return dict(self._orders)

    def order(self, v: str) -> int:
        try:
            return self._orders[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def has_edge(self, u: str, w: str) -> bool:
        return w in self._adj.get(u, ())

    def __contains__(self, v: object) -> bool:
        return v in self._orders

    def __len__(self) -> int:
        return len(self._orders)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self._edges)  # type: ignore[misc]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProductGraph):
            return NotImplemented
        return self._orders == other._orders and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._orders.items()), self._edges))
        return self._hash

    def __repr__(self) -> str:
        vs = ", ".join(f"{v}:{self._orders[v]}" for v in self._vertices)
        es = ", ".join(f"{u}-{w}" for u, w in self.sorted_edges())
        return f"ProductGraph([{vs}], [{es}])"

    def relabel(self, mapping: Mapping[str, str]) -> ProductGraph:
        return ProductGraph(
            {mapping[v]: n for v, n in self._orders.items()},
            [(mapping[u], mapping[w]) for u, w in self.sorted_edges()],
        )


class AbelianProductGraph:
    """Graph product graph whose vertex groups are finite abelian groups,
    each given by the orders of its cyclic factors."""

    __slots__ = ("factors", "edges")

    def __init__(self, factors: Mapping[str, Sequence[int]], edges: Iterable[Sequence[str]] = ()):
        fs: dict[str, tuple[int, ...]] = {}
        for v, orders in factors.items():
            _check_id(v)
            orders = tuple(orders)
            if not orders:
                raise GraphError(f"vertex {v!r} needs at least one cyclic factor")
            for n in orders:
                if isinstance(n, bool) or not isinstance(n, int) or n < 2:
                    raise GraphError(f"factor order of vertex {v!r} must be >= 2, got {n!r}")
            fs[v] = orders
        # reuse ProductGraph's edge validation
        skeleton = ProductGraph({v: 2 for v in fs}, edges)
        self.factors = fs
        self.edges = skeleton.edges


@dataclass(frozen=True)
class GraphCertificate:
    """A subdivision of ``model`` inside some host graph.

    ``branch`` lists the model's branch vertices; for the bipartite models the
    first side comes first (3 for K33, 2 for K23).  ``paths`` holds one vertex
    sequence per model edge, running between two branch vertices.
    """

    model: str
    branch: tuple[Hashable, ...]
    paths: tuple[tuple[Hashable, ...], ...]

    def vertices(self) -> set[Hashable]:
        out = set(self.branch)
        for p in self.paths:
            out.update(p)
        return out

    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def to_json(self) -> dict[str, Any]:
        return {"model": self.model, "branch": list(self.branch), "paths": [list(p) for p in self.paths]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> GraphCertificate:
        return cls(
            model=data["model"],
            branch=tuple(data["branch"]),
            paths=tuple(tuple(p) for p in data["paths"]),
        )


MODELS = {"K4": (4, 0), "K5": (5, 0), "K23": (2, 3), "K33": (3, 3)}


def model_edges(model: str, branch: Sequence[Hashable]) -> set[frozenset]:
    """Edge set of ``model`` realised on the given branch vertices."""
    if model not in MODELS:
        raise GraphError(f"unknown model {model!r}")
    a, b = MODELS[model]
    if len(branch) != a + b:
        raise GraphError(f"{model} needs {a + b} branch vertices, got {len(branch)}")
    if b == 0:
        return {frozenset(p) for p in combinations(branch, 2)}
    return {frozenset((x, y)) for x in branch[:a] for y in branch[a:]}


# -- graph operations ---------------------------------------------------------


def induced_subgraph(g: ProductGraph, vs: Iterable[str]) -> ProductGraph:
    vs = set(vs)
    for v in vs:
        if v not in g:
            raise GraphError(f"unknown vertex {v!r}")
    # g is already validated, so fill the slots directly
    sub = ProductGraph.__new__(ProductGraph)
    sub._orders = {v: g._orders[v] for v in vs}
    sub._vertices = tuple(sorted(vs))
    sub._adj = {v: g._adj[v] & vs for v in vs}
    sub._edges = frozenset(e for e in g._edges if e <= vs)
    sub._hash = None
    return sub


def split_by_order(g: ProductGraph) -> tuple[ProductGraph, ProductGraph]:
    """Return the induced subgraphs on order-2 vertices and on order>2 vertices."""
    twos = [v for v in g.vertices if g.order(v) == 2]
    big = [v for v in g.vertices if g.order(v) > 2]
    if not big:
        # graphs are immutable, so the whole graph can stand in for its order-2 part
        return g, induced_subgraph(g, big)
    return induced_subgraph(g, twos), induced_subgraph(g, big)


def link(g: ProductGraph, v: str) -> ProductGraph:
    """Induced subgraph on the neighbours of ``v``."""
    return induced_subgraph(g, g.neighbors(v))


def connected_components(g: ProductGraph, removed: Iterable[str] = ()) -> list[set[str]]:
    """Components of ``g`` (optionally with ``removed`` deleted), sorted by least id."""
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def _shortest_path(g: ProductGraph, src: str, dst: str, blocked: set[str]) -> list[str] | None:
    prev = {src: src}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            path = [x]
            while path[-1] != src:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in sorted(g.neighbors(x)):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    return None


def has_induced_cycle_through(g: ProductGraph, v: str) -> list[str] | None:
    """An induced cycle of ``g`` through ``v`` (as a vertex sequence starting at
    ``v``), or ``None`` if there is none.

    Two adjacent neighbours of ``v`` give a triangle.  Otherwise a cycle through
    neighbours ``x, y`` is induced exactly when the rest of it avoids the closed
    neighbourhood of ``v``; a shortest such ``x``-``y`` path is chordless.
    """
    nbrs = sorted(g.neighbors(v))
    for x, y in combinations(nbrs, 2):
        if g.has_edge(x, y):
            return [v, x, y]
    closed = set(nbrs) | {v}
    for x, y in combinations(nbrs, 2):
        path = _shortest_path(g, x, y, closed - {x, y})
        if path is not None:
            cycle = [v, *path]
            assert is_induced_cycle(g, cycle)
            return cycle
    return None


def is_induced_cycle(g: ProductGraph, cycle: Sequence[str]) -> bool:
    """True iff ``cycle`` lists the vertices of a chordless cycle of ``g`` in order."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True


def expand_abelian(g: AbelianProductGraph) -> ProductGraph:
    """Replace every vertex by a clique of its cyclic factors.

    A vertex with a single factor keeps its id; factor ``i`` of a vertex ``v``
    with several factors becomes ``v.i``.
    """
    names: dict[str, list[str]] = {}
    orders: dict[str, int] = {}
    for v, fs in g.factors.items():
        names[v] = [v] if len(fs) == 1 else [f"{v}.{i}" for i in range(len(fs))]
        for name, n in zip(names[v], fs):
            if name in orders:
                raise GraphError(f"expanded vertex id {name!r} collides with an existing id")
            orders[name] = n
    edges: list[tuple[str, str]] = []
    for v in g.factors:
        edges.extend(combinations(names[v], 2))
    for e in sorted(tuple(sorted(e)) for e in g.edges):
        u, w = e
        edges.extend((x, y) for x in names[u] for y in names[w])
    return ProductGraph(orders, edges)


# -- JSON ---------------------------------------------------------------------


def _array_item_lines(text: str, key: str) -> list[int]:
    """Line numbers (1-based) of the items of the top-level array ``key``."""
    m = re.search(r'"%s"\s*:\s*\[' % re.escape(key), text)
    if not m:
        return []
    dec = json.JSONDecoder()
    pos = m.end()
    lines = []
    while True:
        while pos < len(text) and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= len(text) or text[pos] == "]":
            return lines
        lines.append(text.count("\n", 0, pos) + 1)
        try:
            _, pos = dec.raw_decode(text, pos)
        except json.JSONDecodeError:
            return lines


def graph_from_json(text: str) -> ProductGraph | AbelianProductGraph:
    """Parse the JSON graph format.

    Vertices carry either ``"order": n`` or ``"orders": [n, ...]``; any
    ``"orders"`` entry makes the whole document an abelian graph.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"line {err.lineno}, column {err.colno}: {err.msg}") from None
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise InputError("line 1: expected an object with a 'vertices' array")
    edges_raw = data.get("edges", [])
    if not isinstance(edges_raw, list):
        raise InputError("'edges' must be an array")
    vlines = _array_item_lines(text, "vertices")
    elines = _array_item_lines(text, "edges")

    def where(lines: list[int], kind: str, i: int) -> str:
        line = f"line {lines[i]}, " if i < len(lines) else ""
        return f"{line}{kind}[{i}]"

    factors: dict[str, list[int]] = {}
    abelian = False
    for i, item in enumerate(data["vertices"]):
        if not isinstance(item, dict) or "id" not in item:
            raise InputError(f"{where(vlines, 'vertices', i)}: expected an object with an 'id'")
        v = item["id"]
        if v in factors:
            raise InputError(f"{where(vlines, 'vertices', i)}: duplicate vertex id {v!r}")
        if "orders" in item:
            abelian = True
            fs = item["orders"]
            if not isinstance(fs, list):
                raise InputError(f"{where(vlines, 'vertices', i)}: 'orders' must be an array")
        elif "order" in item:
            fs = [item["order"]]
        else:
            raise InputError(f"{where(vlines, 'vertices', i)}: missing 'order'")
        try:
            _check_id(v)
            for n in fs:
                if isinstance(n, bool) or not isinstance(n, int) or n < 2:
                    raise GraphError(f"order must be an integer >= 2, got {n!r}")
        except GraphError as err:
            raise InputError(f"{where(vlines, 'vertices', i)}: {err}") from None
        factors[v] = fs
    seen: set[frozenset] = set()
    edges = []
    for i, e in enumerate(edges_raw):
        ok = isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)
        if not ok:
            raise InputError(f"{where(elines, 'edges', i)}: expected a pair of vertex ids, got {e!r}")
        u, w = e
        if u not in factors or w not in factors:
            raise InputError(f"{where(elines, 'edges', i)}: unknown vertex in edge {e!r}")
        if u == w:
            raise InputError(f"{where(elines, 'edges', i)}: self-loop at {u!r}")
        if frozenset(e) in seen:
            raise InputError(f"{where(elines, 'edges', i)}: duplicate edge {e!r}")
        seen.add(frozenset(e))
        edges.append((u, w))
    if abelian:
        return AbelianProductGraph(factors, edges)
    return ProductGraph({v: fs[0] for v, fs in factors.items()}, edges)


def graph_to_json(g: ProductGraph | AbelianProductGraph) -> dict[str, Any]:
    if isinstance(g, AbelianProductGraph):
        vertices = [{"id": v, "orders": list(fs)} for v, fs in sorted(g.factors.items())]
        edges = sorted(sorted(e) for e in g.edges)
    else:
        vertices = [{"id": v, "order": g.order(v)} for v in g.vertices]
        edges = [list(e) for e in g.sorted_edges()]
    return {"vertices": vertices, "edges": edges}


def load_graph(text: str) -> ProductGraph:
    """Parse a graph document, expanding abelian labels into cyclic ones."""
    g = graph_from_json(text)
    if isinstance(g, AbelianProductGraph):
        return expand_abelian(g)
    return g
