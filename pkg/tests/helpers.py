from __future__ import annotations

import itertools

import networkx as nx
from hypothesis import strategies as st

from gpplanar.graph_model import ProductGraph
from gpplanar.planarity import SimpleGraph


def fan_tree_graph(unlabelled_order: int = 2) -> ProductGraph:
    """A 12-vertex planar example: a five-vertex fan, an isolated Z23, a Z6
    bridging the fan hub to a small tree with a Z4 leaf.  ``r`` is the only
    branching vertex of that tree, so its order is a parameter."""
    orders = {x: 2 for x in ("p1", "p2", "p3", "p4", "hub", "q", "s", "t")}
    orders.update(z23=23, z6=6, z4=4, r=unlabelled_order)
    edges = [
        ("p1", "p2"), ("p3", "p1"), ("p3", "hub"), ("hub", "p4"), ("p2", "p4"),
        ("p1", "hub"), ("p2", "hub"),
        ("hub", "z6"), ("q", "z6"),
        ("r", "q"), ("z4", "q"), ("s", "r"), ("t", "r"),
    ]  # fmt: skip
    return ProductGraph(orders, edges)


def path_graph(orders: list[int]) -> ProductGraph:
    ids = [f"x{i}" for i in range(len(orders))]
    return ProductGraph(dict(zip(ids, orders)), list(zip(ids, ids[1:])))


def cycle_graph(orders: list[int]) -> ProductGraph:
    ids = [f"c{i}" for i in range(len(orders))]
    return ProductGraph(dict(zip(ids, orders)), [(ids[i], ids[(i + 1) % len(ids)]) for i in range(len(ids))])


def star_graph(center: int, leaves: list[int]) -> ProductGraph:
    orders = {"v": center, **{f"l{i}": n for i, n in enumerate(leaves)}}
    return ProductGraph(orders, [("v", f"l{i}") for i in range(len(leaves))])


def complete_graph(orders: list[int]) -> ProductGraph:
    ids = [f"k{i}" for i in range(len(orders))]
    return ProductGraph(dict(zip(ids, orders)), list(itertools.combinations(ids, 2)))


def to_nx(g: ProductGraph | SimpleGraph) -> nx.Graph:
    h = nx.Graph()
    if isinstance(g, SimpleGraph):
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
    else:
        h.add_nodes_from(g.vertices)
        h.add_edges_from(g.sorted_edges())
    return h


@st.composite
def product_graphs(draw, min_vertices: int = 1, max_vertices: int = 7, max_order: int = 5, p=None):
    n = draw(st.integers(min_vertices, max_vertices))
    ids = [f"v{i}" for i in range(n)]
    orders = {v: draw(st.sampled_from([2, 2, 2, *range(3, max_order + 1)])) for v in ids}
    pairs = list(itertools.combinations(ids, 2))
    if p is None:
        mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    else:
        mask = [draw(st.floats(0, 1)) < p for _ in pairs]
    return ProductGraph(orders, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def simple_graphs(draw, max_vertices: int = 10):
    n = draw(st.integers(0, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def words(g: ProductGraph, max_size: int = 12):
    return st.lists(
        st.tuples(st.sampled_from(g.vertices), st.integers(-7, 7)),
        max_size=max_size,
    )
