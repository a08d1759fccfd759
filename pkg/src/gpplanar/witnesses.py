"""Explicit K33 subdivisions inside Cay(G(Gamma)).

Three local configurations force non-planarity: an edge between two vertices
of order >= 3, an order>=3 vertex with three order-2 neighbours, and an induced
cycle through an order>=3 vertex.  Each constructor returns the nine paths of
a K33 subdivision as sequences of normal forms; :func:`verify_witness` checks
them against the group, independently of how they were built.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .cayley import DEFAULT_MAX_VERTICES, ball
from .decider import Verdict, decide
from .graph_model import (
    GraphCertificate,
    GraphError,
    ProductGraph,
    induced_subgraph,
    is_induced_cycle,
)
from .planarity import is_planar, kuratowski_witness, verify_certificate
from .words import (
    IDENTITY,
    NormalForm,
    format_word,
    is_generator_step,
    is_normal_form,
    normalize,
    parse_word,
)

__all__ = [
    "WitnessError",
    "SubdivisionWitness",
    "witness_edge",
    "witness_star",
    "witness_cycle",
    "witness_for",
    "ball_witness",
    "verify_witness",
    "witness_to_json",
    "witness_from_json",
    "witness_to_dot",
]


class WitnessError(ValueError):
    """Constructor preconditions do not hold."""


@dataclass(frozen=True)
class SubdivisionWitness:
    model: str
    branch: tuple[NormalForm, ...]
    paths: tuple[tuple[NormalForm, ...], ...]

    def vertices(self) -> set[NormalForm]:
        out = set(self.branch)
        for p in self.paths:
            out.update(p)
        return out

    def edges(self) -> set[frozenset[NormalForm]]:
        return {frozenset(p[i : i + 2]) for p in self.paths for i in range(len(p) - 1)}


def _el(g: ProductGraph, *sylls: tuple[str, int]) -> NormalForm:
    return normalize(g, sylls)


def _k33(branch: Sequence[NormalForm], paths: Iterable[Sequence[NormalForm]]) -> SubdivisionWitness:
    return SubdivisionWitness("K33", tuple(branch), tuple(tuple(p) for p in paths))


def witness_edge(g: ProductGraph, u: str, w: str) -> SubdivisionWitness:
    """K33 in Z_n x Z_m for an edge ``u``-``w`` with both orders >= 3.

    Sides are {1, vw, vw^(m-1)} and {v, w, v^(n-1)} with v = a_u, w = a_w.
    """
    if not g.has_edge(u, w):
        raise WitnessError(f"{u!r} and {w!r} are not adjacent")
    n, m = g.order(u), g.order(w)
    if n < 3 or m < 3:
        raise WitnessError("both endpoints need order >= 3")

    def el(i: int, j: int) -> NormalForm:
        return _el(g, (u, i), (w, j))

    one, vw, vwm = IDENTITY, el(1, 1), el(1, m - 1)
    v, ww, vn = el(1, 0), el(0, 1), el(n - 1, 0)
    return _k33(
        [one, vw, vwm, v, ww, vn],
        [
            [one, v],
            [one, ww],
            [one, vn],
            [vw, v],
            [vw, ww],
            [el(i, 1) for i in range(1, n)] + [vn],
            [vwm, v],
            [vwm] + [el(0, j) for j in range(m - 1, 0, -1)],
            [el(i, m - 1) for i in range(1, n)] + [vn],
        ],
    )


def witness_star(g: ProductGraph, v: str, leaves: Sequence[str]) -> SubdivisionWitness:
    """K33 for an order>=3 vertex ``v`` with three order-2 neighbours.

    Sides are {1, v, v^(n-1)} and {a v^(n-1), b v^(n-1), c v^(n-1)}.
    """
    n = g.order(v)
    if n < 3:
        raise WitnessError(f"{v!r} needs order >= 3")
    if len(leaves) != 3 or len(set(leaves)) != 3:
        raise WitnessError("need three distinct leaves")
    for x in leaves:
        if g.order(x) != 2 or not g.has_edge(v, x):
            raise WitnessError(f"leaf {x!r} must have order 2 and be adjacent to {v!r}")
    one, vv, vn = IDENTITY, _el(g, (v, 1)), _el(g, (v, n - 1))
    right = [_el(g, (x, 1), (v, n - 1)) for x in leaves]
    paths = []
    for x, xvn in zip(leaves, right):
        paths.append([one, _el(g, (x, 1)), xvn])
        paths.append([vv] + [_el(g, (x, 1), (v, i)) for i in range(1, n)])
        paths.append([vn, xvn])
    return _k33([one, vv, vn, *right], paths)


def _chain(g: ProductGraph, xs: Sequence[str], w: str) -> list[NormalForm]:
    # x1, x1x2, x2, x2x3, ..., xk, xk w, w along consecutive commuting vertices
    out: list[NormalForm] = []
    stops = [*xs, w]
    for x, y in zip(stops, stops[1:]):
        out += [_el(g, (x, 1)), _el(g, (x, 1), (y, 1))]
    return out + [_el(g, (w, 1))]


def witness_cycle(g: ProductGraph, cycle: Sequence[str]) -> SubdivisionWitness:
    """K33 for an induced cycle of ``g`` through a vertex of order >= 3."""
    cycle = list(cycle)
    if not is_induced_cycle(g, cycle):
        raise WitnessError(f"{cycle!r} is not an induced cycle")
    k = len(cycle)
    big = [x for x in cycle if g.order(x) >= 3]
    if not big:
        raise WitnessError("cycle has no vertex of order >= 3")
    for i in range(k):
        x, y = cycle[i], cycle[(i + 1) % k]
        if g.order(x) >= 3 and g.order(y) >= 3:
            return witness_edge(g, x, y)
    v = min(big)
    s = cycle.index(v)
    c = cycle[s:] + cycle[:s]
    n = g.order(v)
    one, vv, vn = IDENTITY, _el(g, (v, 1)), _el(g, (v, n - 1))
    if k == 3:
        a, b = c[1], c[2]
        abv = _el(g, (a, 1), (b, 1), (v, 1))
        avn = _el(g, (a, 1), (v, n - 1))
        aa, bb = _el(g, (a, 1)), _el(g, (b, 1))
        return _k33(
            [one, abv, avn, aa, bb, vv],
            [
                [one, aa],
                [one, bb],
                [one, vv],
                [abv, _el(g, (a, 1), (b, 1)), aa],
                [abv, _el(g, (b, 1), (v, 1)), bb],
                [abv, _el(g, (a, 1), (v, 1)), vv],
                [avn, aa],
                [avn, _el(g, (a, 1), (b, 1), (v, n - 1)), _el(g, (b, 1), (v, n - 1)), bb],
                [avn] + [_el(g, (v, i)) for i in range(n - 1, 0, -1)],
            ],
        )
    j = k // 2
    a1, b1, w = c[1], c[-1], c[j]
    a_side = c[1:j]
    b_side = c[j + 1 :][::-1]
    ww = _el(g, (w, 1))
    aa, bb = _el(g, (a1, 1)), _el(g, (b1, 1))
    return _k33(
        [aa, one, bb, vv, ww, vn],
        [
            [aa, _el(g, (a1, 1), (v, 1)), vv],
            _chain(g, a_side, w),
            [aa, _el(g, (a1, 1), (v, n - 1)), vn],
            [one, vv],
            [one, ww],
            [one, vn],
            [bb, _el(g, (b1, 1), (v, 1)), vv],
            _chain(g, b_side, w),
            [bb, _el(g, (b1, 1), (v, n - 1)), vn],
        ],
    )


def witness_for(g: ProductGraph, verdict: Verdict) -> SubdivisionWitness | None:
    """Group-level witness for a non-planar verdict.

    Returns None for planar verdicts and for verdicts whose only failure is
    condition I (those carry a graph-level K4/K23 certificate instead).
    """
    fresh = decide(g)
    if fresh.planar != verdict.planar or fresh.conditions() != verdict.conditions():
        raise WitnessError("verdict does not belong to this graph")
    if verdict.planar:
        return None
    ii = verdict.violation("II")
    if ii is not None:
        return witness_edge(g, *ii.locus)
    iii = verdict.violation("III")
    if iii is not None:
        v, *nbrs = iii.locus
        for x in nbrs:
            if g.order(x) >= 3:
                return witness_edge(g, v, x)
        if len(nbrs) >= 3:
            return witness_star(g, v, nbrs[:3])
        return witness_cycle(g, [v, *nbrs])
    iv = verdict.violation("IV")
    if iv is not None:
        return witness_cycle(g, iv.locus)
    return None


def ball_witness(
    g: ProductGraph,
    support: Iterable[str],
    max_radius: int,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> tuple[SubdivisionWitness, int] | None:
    """Search balls of G(<support>) of growing radius for a Kuratowski
    subdivision; returns it (with the radius used) or None.

    Elements of the subgroup keep their normal forms in G(Gamma), so the
    result is a witness over ``g``.
    """
    sub = induced_subgraph(g, support)
    for r in range(1, max_radius + 1):
        b = ball(sub, r, max_vertices)
        sg = b.to_simple_graph()
        if is_planar(sg)[0]:
            continue
        c = kuratowski_witness(sg)
        verts = b.vertices
        w = SubdivisionWitness(
            c.model,
            tuple(verts[i] for i in c.branch),
            tuple(tuple(verts[i] for i in p) for p in c.paths),
        )
        return w, r
    return None


class _CayleyHost:
    def __init__(self, g: ProductGraph):
        self.g = g

    def __contains__(self, x: object) -> bool:
        return isinstance(x, tuple) and is_normal_form(self.g, x)

    def has_edge(self, x: NormalForm, y: NormalForm) -> bool:
        return is_generator_step(self.g, x, y) is not None


def verify_witness(g: ProductGraph, w: SubdivisionWitness) -> bool:
    """Check that ``w`` is a subdivision of its model inside Cay(G(g))."""
    if w.model not in ("K33", "K5"):
        return False
    try:
        cert = GraphCertificate(w.model, w.branch, w.paths)
        return verify_certificate(_CayleyHost(g), cert)
    except (GraphError, TypeError, ValueError):
        return False


# -- export ----------------------------------------------------------------------


def witness_to_json(w: SubdivisionWitness) -> dict[str, Any]:
    return {
        "model": w.model,
        "branch": [format_word(x) for x in w.branch],
        "paths": [[format_word(x) for x in p] for p in w.paths],
    }


def witness_from_json(g: ProductGraph, data: Mapping[str, Any]) -> SubdivisionWitness:
    return SubdivisionWitness(
        data["model"],
        tuple(parse_word(g, x) for x in data["branch"]),
        tuple(tuple(parse_word(g, x) for x in p) for p in data["paths"]),
    )


def witness_to_dot(w: SubdivisionWitness) -> str:
    verts = sorted(w.vertices())
    idx = {x: i for i, x in enumerate(verts)}
    branch = set(w.branch)
    lines = ["graph witness {"]
    for x in verts:
        style = ", style=filled, fillcolor=red" if x in branch else ""
        lines.append(f'  {idx[x]} [label="{format_word(x) or "1"}"{style}];')
    for e in sorted(tuple(sorted(idx[x] for x in e)) for e in w.edges()):
        lines.append(f"  {e[0]} -- {e[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
