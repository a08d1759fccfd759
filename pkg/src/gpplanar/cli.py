"""Command-line front end.

Exit codes: 0 success (planar for ``decide``), 1 failed check
(``check-witness`` rejects, ``corpus`` finds an inconsistency), 2 input error,
3 ball size cap exceeded, 10 non-planar, 11 ``witness`` asked for a planar
graph.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .cayley import DEFAULT_MAX_VERTICES, BallTooLarge, ball, ball_to_dot, ball_to_json
from .corpus import CONFIRM_RADIUS, run_corpus
from .decider import decide
from .decomposition import PlanError, plan, plan_outline, plan_to_json, validate_plan
from .graph_model import GraphCertificate, GraphError, ProductGraph, load_graph
from .planarity import verify_certificate
from .witnesses import (
    ball_witness,
    verify_witness,
    witness_for,
    witness_from_json,
    witness_to_dot,
    witness_to_json,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_NONPLANAR = 10
EXIT_PLANAR_INPUT = 11


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc.strerror}") from None


def _graph(path: str) -> ProductGraph:
    try:
        return load_graph(_read(path))
    except GraphError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc}") from None


def _emit(obj: Any) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
    else:
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")


def cmd_decide(args: argparse.Namespace) -> int:
    verdict = decide(_graph(args.graph))
    _emit(verdict.to_json())
    return EXIT_OK if verdict.planar else EXIT_NONPLANAR


def cmd_witness(args: argparse.Namespace) -> int:
    g = _graph(args.graph)
    verdict = decide(g)
    if verdict.planar:
        raise _Exit(EXIT_PLANAR_INPUT, "Cayley graph is planar; there is no witness")
    w = witness_for(g, verdict)
    if w is None and args.cayley:
        try:
            found = ball_witness(g, verdict.violations[0].locus, args.max_radius, args.max_ball_vertices)
        except BallTooLarge as exc:
            raise _Exit(EXIT_CAP, str(exc)) from None
        if found is not None:
            w = found[0]
    if w is not None:
        if not verify_witness(g, w):
            raise AssertionError("constructed witness failed verification")
        _emit(witness_to_dot(w) if args.format == "dot" else witness_to_json(w))
        return EXIT_OK
    v = verdict.violations[0]
    cert = v.certificate
    assert cert is not None and verify_certificate(g, cert)
    _emit({"condition": v.condition, "certificate": cert.to_json()})
    return EXIT_OK


def cmd_ball(args: argparse.Namespace) -> int:
    if args.radius < 0:
        raise _Exit(EXIT_INPUT, "radius must be non-negative")
    g = _graph(args.graph)
    try:
        b = ball(g, args.radius, args.max_ball_vertices)
    except BallTooLarge as exc:
        raise _Exit(EXIT_CAP, str(exc)) from None
    _emit(ball_to_dot(b) if args.format == "dot" else ball_to_json(b))
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    g = _graph(args.graph)
    try:
        p = plan(g)
    except PlanError as exc:
        raise _Exit(EXIT_NONPLANAR, str(exc)) from None
    assert validate_plan(g, p)
    _emit(plan_outline(p) if args.outline else plan_to_json(p))
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    try:
        report = run_corpus(
            args.seed, args.count, args.max_vertices, args.max_order, args.ball_radius, args.max_ball_vertices
        )
    except ValueError as exc:
        raise _Exit(EXIT_INPUT, str(exc)) from None
    _emit(report.to_json())
    bad = report.inconsistent
    for rec in bad:
        print(json.dumps(rec, sort_keys=True), file=sys.stderr)
    return EXIT_CHECK_FAILED if bad else EXIT_OK


def cmd_check_witness(args: argparse.Namespace) -> int:
    g = _graph(args.graph)
    try:
        data = json.loads(_read(args.witness))
        if "certificate" in data:
            ok = verify_certificate(g, GraphCertificate.from_json(data["certificate"]))
        else:
            ok = verify_witness(g, witness_from_json(g, data))
    except (ValueError, KeyError, TypeError) as exc:
        raise _Exit(EXIT_INPUT, f"{args.witness}: malformed witness ({exc})") from None
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot"), default=argparse.SUPPRESS)
    common.add_argument("--max-ball-vertices", type=int, metavar="N", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="gpplanar",
        description="Planarity of Cayley graphs of graph products of finite cyclic groups.",
    )
    parser.add_argument("--format", choices=("json", "dot"), default="json")
    parser.add_argument("--max-ball-vertices", type=int, metavar="N", default=DEFAULT_MAX_VERTICES)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="print the verdict; exit 0 planar, 10 non-planar")
    p.add_argument("graph")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("witness", parents=[common], help="print a non-planarity certificate")
    p.add_argument("graph")
    p.add_argument(
        "--cayley",
        action="store_true",
        help="when only the order-2 part fails, search Cayley balls for a group-level certificate",
    )
    p.add_argument("--max-radius", type=int, default=CONFIRM_RADIUS)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("ball", parents=[common], help="print the ball of radius R")
    p.add_argument("graph")
    p.add_argument("-r", "--radius", type=int, required=True)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("plan", parents=[common], help="print a decomposition plan of a planar input")
    p.add_argument("graph")
    p.add_argument("--outline", action="store_true", help="indented text instead of JSON")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("corpus", parents=[common], help="cross-check random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--ball-radius", type=int, default=3)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("check-witness", parents=[common], help="verify a witness file against a graph")
    p.add_argument("graph")
    p.add_argument("witness")
    p.set_defaults(func=cmd_check_witness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(f"gpplanar: {exc.message}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
