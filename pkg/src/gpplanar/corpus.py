"""Seeded random-graph harness cross-checking the decider against witnesses
and finite Cayley balls.

For each graph:

* planar verdict: every ball up to the requested radius must be planar;
* non-planar verdict: the group-level witness must verify, or (when the only
  failure is the order-2 part) some ball of the subgroup spanned by the
  offending vertices must be non-planar.

A record that breaks either rule, or whose fields disagree with each other,
is an inconsistency.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any

from .cayley import DEFAULT_MAX_VERTICES, BallTooLarge, ball
from .decider import decide
from .graph_model import ProductGraph, graph_to_json
from .planarity import SimpleGraph, is_planar
from .witnesses import ball_witness, verify_witness, witness_for

__all__ = ["EDGE_PROBABILITIES", "CorpusReport", "random_graph", "graph_hash", "check_graph", "run_corpus"]

EDGE_PROBABILITIES = (0.2, 0.4, 0.6)
# radius cap for the ball search that backs up order-2-only failures
CONFIRM_RADIUS = 4


def random_graph(rng: random.Random, max_vertices: int, max_order: int) -> ProductGraph:
    """Erdos-Renyi graph on 1..max_vertices vertices; order 2 is three times
    as likely as each larger order."""
    n = rng.randint(1, max_vertices)
    p = rng.choice(EDGE_PROBABILITIES)
    choices = list(range(2, max_order + 1))
    weights = [3 if k == 2 else 1 for k in choices]
    ids = [f"v{i}" for i in range(n)]
    orders = {v: rng.choices(choices, weights)[0] for v in ids}
    edges = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return ProductGraph(orders, edges)


def graph_hash(g: ProductGraph) -> str:
    text = json.dumps(graph_to_json(g), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _radius_slice(sg: SimpleGraph, distance: tuple[int, ...], r: int) -> SimpleGraph:
    # induced subgraph of a larger ball on the elements within distance r
    keep = [i for i, d in enumerate(distance) if d <= r]
    pos = {old: k for k, old in enumerate(keep)}
    return SimpleGraph(
        len(keep),
        frozenset((pos[i], pos[j]) for i, j in sg.edges if i in pos and j in pos),
    )


def check_graph(
    g: ProductGraph, ball_radius: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> dict[str, Any]:
    """Decide ``g`` and cross-check the verdict; returns one report record."""
    timings: dict[str, float] = {}
    t = time.perf_counter()
    verdict = decide(g)
    timings["decide"] = (time.perf_counter() - t) * 1000
    problems: list[str] = []
    rec: dict[str, Any] = {
        "hash": graph_hash(g),
        "graph": graph_to_json(g),
        "verdict": verdict.to_json(),
        "violations": verdict.conditions(),
        "witness": None,
        "witness_verified": False,
        "ball_radii": [],
        "ball_planar": [],
    }

    if verdict.planar:
        t = time.perf_counter()
        try:
            b = ball(g, ball_radius, max_vertices)
        except BallTooLarge:
            rec["ball_capped"] = True
        else:
            sg = b.to_simple_graph()
            for r in range(1, ball_radius + 1):
                rec["ball_radii"].append(r)
                rec["ball_planar"].append(is_planar(_radius_slice(sg, b.distance, r))[0])
            if not all(rec["ball_planar"]):
                problems.append("planar verdict but a non-planar ball")
        timings["ball"] = (time.perf_counter() - t) * 1000
    else:
        t = time.perf_counter()
        w = witness_for(g, verdict)
        if w is not None:
            rec["witness"] = "group"
            rec["witness_verified"] = verify_witness(g, w)
            if not rec["witness_verified"]:
                problems.append("group witness fails verification")
        else:
            rec["witness"] = "ball"
            support = verdict.violations[0].locus
            try:
                found = ball_witness(g, support, CONFIRM_RADIUS, max_vertices)
            except BallTooLarge:
                found = None
                rec["ball_capped"] = True
            if found is not None:
                bw, r = found
                rec["ball_radii"] = list(range(1, r + 1))
                rec["ball_planar"] = [True] * (r - 1) + [False]
                rec["witness_verified"] = verify_witness(g, bw)
            if not rec["witness_verified"]:
                problems.append("no confirmation of the non-planar verdict")
        timings["witness"] = (time.perf_counter() - t) * 1000

    if rec["witness_verified"] and verdict.planar:
        problems.append("witness recorded for a planar verdict")
    if verdict.planar != (not rec["violations"]):
        problems.append("verdict flag disagrees with its violations")
    rec["inconsistencies"] = problems
    rec["timings_ms"] = {k: round(v, 3) for k, v in timings.items()}
    return rec


@dataclass
class CorpusReport:
    params: dict[str, Any]
    records: list[dict[str, Any]] = field(default_factory=list)

    @property
    def inconsistent(self) -> list[dict[str, Any]]:
        return [r for r in self.records if r["inconsistencies"]]

    def to_json(self) -> dict[str, Any]:
        return {
            "params": self.params,
            "records": self.records,
            "planar": sum(r["verdict"]["planar"] for r in self.records),
            "inconsistencies": len(self.inconsistent),
        }


def run_corpus(
    seed: int,
    count: int,
    max_vertices: int,
    max_order: int,
    ball_radius: int,
    max_ball_vertices: int = DEFAULT_MAX_VERTICES,
) -> CorpusReport:
    """Deterministic under a fixed seed except for ``timings_ms``."""
    if count < 0 or max_vertices < 1 or max_order < 2 or ball_radius < 0:
        raise ValueError("count >= 0, max_vertices >= 1, max_order >= 2, ball_radius >= 0 required")
    rng = random.Random(seed)
    report = CorpusReport(
        {
            "seed": seed,
            "count": count,
            "max_vertices": max_vertices,
            "max_order": max_order,
            "ball_radius": ball_radius,
        }
    )
    for i in range(count):
        g = random_graph(rng, max_vertices, max_order)
        rec = check_graph(g, ball_radius, max_ball_vertices)
        report.records.append({"index": i, **rec})
    return report
