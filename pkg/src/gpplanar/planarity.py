"""Planarity of finite simple graphs.

The test is the left-right (de Fraysseix-Rosenstiehl) criterion in the
formulation of Brandes, run iteratively so that deep DFS trees of Cayley balls
do not hit the recursion limit.  A positive answer comes with a rotation
system that is checked against Euler's formula before it is returned.
Kuratowski subdivisions are extracted by deleting edges while the graph stays
non-planar, then reading off branch vertices and paths.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .graph_model import GraphCertificate, GraphError, MODELS, model_edges

__all__ = [
    "SimpleGraph",
    "RotationSystem",
    "PlanarityError",
    "is_planar",
    "is_outerplanar",
    "kuratowski_witness",
    "outerplanarity_witness",
    "verify_certificate",
    "count_faces",
    "check_rotation_system",
    "certificate_from_subdivision",
    "parse_dot",
]


class PlanarityError(ValueError):
    """Raised when a certificate is requested for a graph that has none."""


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph on vertices ``0..n-1``; edges are ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> SimpleGraph:
        out = set()
        for e in edges:
            i, j = e
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge {e!r} out of range for n={n}")
            if i == j:
                raise GraphError(f"self-loop at {i}")
            out.add((i, j) if i < j else (j, i))
        return cls(n, frozenset(out))

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> SimpleGraph:
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def cycle(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        comp = [-1] * self.n
        out = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            members = [s]
            for x in members:
                for y in adj[x]:
                    if comp[y] < 0:
                        comp[y] = comp[s]
                        members.append(y)
            out.append(members)
        return out


@dataclass(frozen=True)
class RotationSystem:
    """Clockwise cyclic order of neighbours around every vertex."""

    rotation: tuple[tuple[int, ...], ...]

    def faces(self) -> int:
        return count_faces(self.rotation)


# -- left-right planarity ------------------------------------------------------


def _lr(n: int, edges: Sequence[tuple[int, int]], embed: bool) -> list[list[int]] | bool | None:
    """Run the LR test.  Returns None when non-planar; otherwise the clockwise
    rotation lists if ``embed`` else True."""
    m = len(edges)
    if n > 2 and m > 3 * n - 6:
        return None
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (u, w) in enumerate(edges):
        adj[u].append((w, k))
        adj[w].append((u, k))

    # phase 1: DFS orientation, lowpoints and nesting depths
    height = [-1] * n
    parent_edge = [-1] * n
    src = [-1] * m
    dst = [-1] * m
    lowpt = [0] * m
    lowpt2 = [0] * m
    nd = [0] * m
    out: list[list[int]] = [[] for _ in range(n)]
    roots = []
    ind = [0] * n
    skip = bytearray(m)
    for root in range(n):
        if height[root] != -1:
            continue
        height[root] = 0
        roots.append(root)
        stack = [root]
        while stack:
            v = stack.pop()
            e = parent_edge[v]
            av = adj[v]
            hv = height[v]
            i = ind[v]
            descended = False
            while i < len(av):
                w, k = av[i]
                if not skip[k]:
                    if src[k] != -1:
                        i += 1
                        continue
                    src[k] = v
                    dst[k] = w
                    out[v].append(k)
                    lowpt[k] = lowpt2[k] = hv
                    if height[w] == -1:
                        parent_edge[w] = k
                        height[w] = hv + 1
                        skip[k] = 1
                        ind[v] = i
                        stack.append(v)
                        stack.append(w)
                        descended = True
                        break
                    lowpt[k] = height[w]
                nd[k] = 2 * lowpt[k] + (1 if lowpt2[k] < hv else 0)
                if e != -1:
                    if lowpt[k] < lowpt[e]:
                        lowpt2[e] = min(lowpt[e], lowpt2[k])
                        lowpt[e] = lowpt[k]
                    elif lowpt[k] > lowpt[e]:
                        lowpt2[e] = min(lowpt2[e], lowpt[k])
                    else:
                        lowpt2[e] = min(lowpt2[e], lowpt2[k])
                i += 1
            if not descended:
                ind[v] = i

    # phase 2: testing.  A conflict pair is [left.low, left.high, right.low, right.high].
    ordered = [sorted(o, key=nd.__getitem__) for o in out]
    ref = [-1] * m
    side = [1] * m
    lowpt_edge = [-1] * m
    stack_bottom: list[list[int] | None] = [None] * m
    S: list[list[int]] = []

    def conflicting(low: int, high: int, b: int) -> bool:
        return not (low == -1 and high == -1) and lowpt[high] > lowpt[b]

    def add_constraints(ei: int, e: int) -> bool:
        P = [-1, -1, -1, -1]
        while True:
            Q = S.pop()
            if not (Q[0] == -1 and Q[1] == -1):
                Q[0], Q[1], Q[2], Q[3] = Q[2], Q[3], Q[0], Q[1]
            if not (Q[0] == -1 and Q[1] == -1):
                return False
            if lowpt[Q[2]] > lowpt[e]:
                if P[2] == -1 and P[3] == -1:
                    P[3] = Q[3]
                elif P[2] != -1:
                    ref[P[2]] = Q[3]
                P[2] = Q[2]
            else:
                ref[Q[2]] = lowpt_edge[e]
            if (S[-1] if S else None) is stack_bottom[ei]:
                break
        while S and (conflicting(S[-1][0], S[-1][1], ei) or conflicting(S[-1][2], S[-1][3], ei)):
            Q = S.pop()
            if conflicting(Q[2], Q[3], ei):
                Q[0], Q[1], Q[2], Q[3] = Q[2], Q[3], Q[0], Q[1]
            if conflicting(Q[2], Q[3], ei):
                return False
            if P[2] != -1:
                ref[P[2]] = Q[3]
            if Q[2] != -1:
                P[2] = Q[2]
            if P[0] == -1 and P[1] == -1:
                P[1] = Q[1]
            elif P[0] != -1:
                ref[P[0]] = Q[1]
            P[0] = Q[0]
        if P != [-1, -1, -1, -1]:
            S.append(P)
        return True

    def lowest(P: list[int]) -> int:
        if P[0] == -1 and P[1] == -1:
            return lowpt[P[2]]
        if P[2] == -1 and P[3] == -1:
            return lowpt[P[0]]
        return min(lowpt[P[0]], lowpt[P[2]])

    def remove_back_edges(e: int) -> None:
        u = src[e]
        hu = height[u]
        while S and lowest(S[-1]) == hu:
            P = S.pop()
            if P[0] != -1:
                side[P[0]] = -1
        if S:
            P = S.pop()
            while P[1] != -1 and dst[P[1]] == u:
                P[1] = ref[P[1]]
            if P[1] == -1 and P[0] != -1:
                ref[P[0]] = P[2]
                side[P[0]] = -1
                P[0] = -1
            while P[3] != -1 and dst[P[3]] == u:
                P[3] = ref[P[3]]
            if P[3] == -1 and P[2] != -1:
                ref[P[2]] = P[0]
                side[P[2]] = -1
                P[2] = -1
            S.append(P)
        if lowpt[e] < hu:
            hl, hr = S[-1][1], S[-1][3]
            if hl != -1 and (hr == -1 or lowpt[hl] > lowpt[hr]):
                ref[e] = hl
            else:
                ref[e] = hr

    ind = [0] * n
    skip = bytearray(m)
    for root in roots:
        stack = [root]
        while stack:
            v = stack.pop()
            e = parent_edge[v]
            ov = ordered[v]
            i = ind[v]
            descended = False
            while i < len(ov):
                ei = ov[i]
                w = dst[ei]
                if not skip[ei]:
                    stack_bottom[ei] = S[-1] if S else None
                    if ei == parent_edge[w]:
                        skip[ei] = 1
                        ind[v] = i
                        stack.append(v)
                        stack.append(w)
                        descended = True
                        break
                    lowpt_edge[ei] = ei
                    S.append([-1, -1, ei, ei])
                if lowpt[ei] < height[v]:
                    if i == 0:
                        lowpt_edge[e] = lowpt_edge[ei]
                    elif not add_constraints(ei, e):
                        return None
                i += 1
            if not descended:
                ind[v] = i
                if e != -1:
                    remove_back_edges(e)

    if not embed:
        return True

    # phase 3: embedding
    def sign(e: int) -> int:
        todo = [e]
        old_ref: dict[int, int] = {}
        while todo:
            x = todo.pop()
            if ref[x] != -1:
                todo.append(x)
                todo.append(ref[x])
                old_ref[x] = ref[x]
                ref[x] = -1
            elif x in old_ref:
                side[x] *= side[old_ref[x]]
        return side[e]

    for k in range(m):
        nd[k] *= sign(k)
    cw: list[dict[int, int]] = [{} for _ in range(n)]
    ccw: list[dict[int, int]] = [{} for _ in range(n)]
    first = [-1] * n

    def add_cw(v: int, w: int, refn: int) -> None:
        if refn == -1:
            cw[v][w] = ccw[v][w] = w
            first[v] = w
            return
        nxt = cw[v][refn]
        cw[v][refn] = w
        cw[v][w] = nxt
        ccw[v][nxt] = w
        ccw[v][w] = refn

    def add_ccw(v: int, w: int, refn: int) -> None:
        if refn == -1:
            add_cw(v, w, -1)
            return
        add_cw(v, w, ccw[v][refn])
        if refn == first[v]:
            first[v] = w

    for v in range(n):
        ordered[v] = sorted(out[v], key=nd.__getitem__)
        prev = -1
        for k in ordered[v]:
            add_cw(v, dst[k], prev)
            prev = dst[k]

    left_ref = [-1] * n
    right_ref = [-1] * n
    ind = [0] * n
    for root in roots:
        stack = [root]
        while stack:
            v = stack.pop()
            ov = ordered[v]
            while ind[v] < len(ov):
                ei = ov[ind[v]]
                ind[v] += 1
                w = dst[ei]
                if ei == parent_edge[w]:
                    add_ccw(w, v, first[w])
                    left_ref[v] = right_ref[v] = w
                    stack.append(v)
                    stack.append(w)
                    break
                if side[ei] == 1:
                    add_cw(w, v, right_ref[w])
                else:
                    add_ccw(w, v, left_ref[w])
                    left_ref[w] = v

    rotation = []
    for v in range(n):
        r = []
        if first[v] != -1:
            x = first[v]
            while True:
                r.append(x)
                x = cw[v][x]
                if x == first[v]:
                    break
        rotation.append(r)
    return rotation


# -- faces and Euler's formula -------------------------------------------------


def count_faces(rotation: Sequence[Sequence[int]]) -> int:
    """Number of face orbits of a rotation system (isolated vertices excluded)."""
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    faces = 0
    for u, r in enumerate(rotation):
        for w in r:
            if (u, w) in seen:
                continue
            faces += 1
            a, b = u, w
            while (a, b) not in seen:
                seen.add((a, b))
                rb = rotation[b]
                a, b = b, rb[(pos[b][a] + 1) % len(rb)]
    return faces


def check_rotation_system(g: SimpleGraph, rotation: Sequence[Sequence[int]]) -> bool:
    """True iff ``rotation`` is a rotation system of ``g`` giving a plane
    embedding of every connected component (V - E + F = 2 for each)."""
    if len(rotation) != g.n:
        return False
    adj = g.adjacency()
    for v in range(g.n):
        if len(rotation[v]) != len(adj[v]) or set(rotation[v]) != set(adj[v]):
            return False
    for comp in g.components():
        members = set(comp)
        sub = [list(rotation[v]) if v in members else [] for v in range(g.n)]
        edges = sum(len(rotation[v]) for v in comp) // 2
        faces = count_faces(sub) if edges else 1
        if len(comp) - edges + faces != 2:
            return False
    return True


# -- public tests ------------------------------------------------------------------


def is_planar(g: SimpleGraph) -> tuple[bool, RotationSystem | None]:
    """Planarity test; a planar answer carries a verified rotation system.

    >>> is_planar(SimpleGraph.complete(5))[0], is_planar(SimpleGraph.complete(4))[0]
    (False, True)
    """
    rot = _lr(g.n, sorted(g.edges), embed=True)
    if rot is None:
        return False, None
    assert isinstance(rot, list)
    if not check_rotation_system(g, rot):
        raise AssertionError("planarity engine produced an invalid embedding")
    return True, RotationSystem(tuple(tuple(r) for r in rot))


def _planar_edges(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    return _lr(n, edges, embed=False) is not None


def _prune_leaves(n: int, edges: Sequence[tuple[int, int]]) -> tuple[int, list[tuple[int, int]]]:
    # vertices of degree <= 1 never lie on a cycle, so dropping them keeps
    # both planarity and outerplanarity
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, w in edges:
        adj[u].add(w)
        adj[w].add(u)
    stack = [v for v in range(n) if len(adj[v]) <= 1]
    alive = [True] * n
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in adj[v]:
            adj[w].discard(v)
            if len(adj[w]) <= 1 and alive[w]:
                stack.append(w)
        adj[v].clear()
    keep = [v for v in range(n) if alive[v]]
    pos = {v: i for i, v in enumerate(keep)}
    return len(keep), [(pos[u], pos[w]) for u, w in edges if alive[u] and alive[w]]


def _outerplanar_edges(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    if n < 4 or len(edges) < 6:
        # K4 and K23 need 4+ vertices and 6 edges
        return True
    if len(edges) > 2 * n - 3:
        return False
    n, edges = _prune_leaves(n, edges)
    if n < 4 or len(edges) < 6:
        return True
    apex = [(i, n) for i in range(n)]
    return _lr(n + 1, edges + apex, embed=False) is not None


def is_outerplanar(g: SimpleGraph) -> bool:
    """True iff ``g`` plus a vertex joined to everything is planar."""
    return _outerplanar_edges(g.n, sorted(g.edges))


# -- certificates ----------------------------------------------------------------


def _minimize(items: list, still_bad: Callable[[list], bool]) -> list:
    """Drop items while ``still_bad`` holds; the result is inclusion-minimal
    provided ``still_bad`` is monotone (bad stays bad under adding items)."""
    keep = list(items)
    chunk = max(1, len(keep) // 2)
    while True:
        i = 0
        while i < len(keep):
            trial = keep[:i] + keep[i + chunk :]
            if still_bad(trial):
                keep = trial
            else:
                i += chunk
        if chunk == 1:
            return keep
        chunk = max(1, chunk // 2)


def certificate_from_subdivision(edges: Iterable[tuple[Hashable, Hashable]]) -> GraphCertificate:
    """Read a subdivision of K4, K5, K23 or K33 off its edge list."""
    adj: dict[Hashable, list] = {}
    for u, w in edges:
        adj.setdefault(u, []).append(w)
        adj.setdefault(w, []).append(u)
    for ns in adj.values():
        ns.sort()
    branch = sorted(v for v, ns in adj.items() if len(ns) >= 3)
    bset = set(branch)
    paths = []
    done: set[tuple] = set()
    for b in branch:
        for nxt in adj[b]:
            path = [b, nxt]
            while path[-1] not in bset:
                a, c = adj[path[-1]]
                path.append(c if a == path[-2] else a)
            key = min(tuple(path), tuple(reversed(path)))
            if key not in done:
                done.add(key)
                paths.append(key)
    degs = sorted(len(adj[b]) for b in branch)
    if degs == [4] * 5:
        model = "K5"
    elif degs == [3] * 4:
        model = "K4"
    elif degs == [3] * 6:
        model = "K33"
        first = branch[0]
        side_a = sorted({p[-1] if p[0] == first else p[0] for p in paths if first in (p[0], p[-1])})
        side_b = [b for b in branch if b not in side_a]
        branch = side_b + side_a
    elif degs == [3, 3]:
        model = "K23"
        x, y = branch
        split = []
        mids = []
        for p in paths:
            if p[0] != x:
                p = p[::-1]
            k = len(p) // 2
            if k == 0 or len(p) < 3:
                raise PlanarityError("not a K23 subdivision: a direct edge joins the branch vertices")
            mids.append(p[k])
            split.extend([p[: k + 1], p[k:]])
        branch = [x, y, *mids]
        paths = split
    else:
        raise PlanarityError(f"edge set is not a Kuratowski-type subdivision (degrees {degs})")
    return GraphCertificate(model, tuple(branch), tuple(paths))


def kuratowski_witness(g: SimpleGraph) -> GraphCertificate:
    """A K5 or K33 subdivision contained in a non-planar ``g``."""
    edges = sorted(g.edges)
    if _planar_edges(g.n, edges):
        raise PlanarityError("graph is planar")
    core = _minimize(edges, lambda es: not _planar_edges(g.n, es))
    cert = certificate_from_subdivision(core)
    assert cert.model in ("K5", "K33") and verify_certificate(g, cert)
    return cert


def outerplanarity_witness(g: SimpleGraph) -> GraphCertificate:
    """A K4 or K23 subdivision contained in a non-outerplanar ``g``."""
    edges = sorted(g.edges)
    if _outerplanar_edges(g.n, edges):
        raise PlanarityError("graph is outerplanar")
    core = _minimize(edges, lambda es: not _outerplanar_edges(g.n, es))
    cert = certificate_from_subdivision(core)
    assert cert.model in ("K4", "K23") and verify_certificate(g, cert)
    return cert


def verify_certificate(host, c: GraphCertificate) -> bool:
    """Check that ``c`` is a subdivision of its model inside ``host``.

    ``host`` needs ``__contains__`` for vertices and ``has_edge(u, v)``.
    """
    if c.model not in MODELS:
        return False
    try:
        wanted = model_edges(c.model, c.branch)
    except GraphError:
        return False
    if len(set(c.branch)) != len(c.branch) or len(c.paths) != len(wanted):
        return False
    branch = set(c.branch)
    used: set = set()
    got = set()
    for p in c.paths:
        if len(p) < 2 or p[0] not in branch or p[-1] not in branch:
            return False
        inner = p[1:-1]
        if any(x in branch or x in used for x in inner) or len(set(inner)) != len(inner):
            return False
        used.update(inner)
        if any(x not in host for x in p):
            return False
        if any(not host.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)):
            return False
        got.add(frozenset((p[0], p[-1])))
    return got == wanted


# -- DOT ----------------------------------------------------------------------------

_DOT_TOKEN = re.compile(r'"(?:[^"\\]|\\.)*"|--|->|[A-Za-z0-9_.]+|[{};\[\]=,]')


def parse_dot(text: str) -> tuple[SimpleGraph, list[str]]:
    """Read an undirected DOT graph (node names and ``--`` chains; attributes
    are skipped).  Returns the graph and the node name of each index."""
    text = re.sub(r"//[^\n]*|/\*.*?\*/|#[^\n]*", "", text, flags=re.S)
    toks = _DOT_TOKEN.findall(text)
    if "{" not in toks or "}" not in toks:
        raise GraphError("DOT input needs a { ... } body")
    head = [t.lower() for t in toks[: toks.index("{")]]
    if "digraph" in head:
        raise GraphError("directed DOT graphs are not supported")
    body = toks[toks.index("{") + 1 : len(toks) - toks[::-1].index("}") - 1]
    names: dict[str, int] = {}
    edges = []

    def node(t: str) -> int:
        t = t[1:-1] if t.startswith('"') else t
        return names.setdefault(t, len(names))

    i = 0
    keywords = {"graph", "node", "edge", "subgraph"}
    while i < len(body):
        t = body[i]
        if t == "[":
            i = body.index("]", i) + 1
            continue
        if t in (";", ",", "{", "}") or t.lower() in keywords:
            i += 1
            continue
        if i + 1 < len(body) and body[i + 1] == "=":
            i += 3
            continue
        chain = [node(t)]
        i += 1
        while i + 1 < len(body) and body[i] == "--":
            chain.append(node(body[i + 1]))
            i += 2
        edges.extend(zip(chain, chain[1:]))
    order = sorted(names, key=names.__getitem__)
    return SimpleGraph.from_edges(len(names), edges), order
