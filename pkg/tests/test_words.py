from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpplanar.graph_model import GraphError, ProductGraph, induced_subgraph
from gpplanar.words import (
    IDENTITY,
    format_word,
    invert,
    is_generator_step,
    is_normal_form,
    multiply,
    normalize,
    parse_word,
    power,
    right_multiply,
    word_length,
)

from helpers import complete_graph, product_graphs, words
from oracles import clique_union_form, free_product_reduce, multipartite_form, tits_matrix

EDGE_23 = ProductGraph({"u": 2, "w": 3}, [("u", "w")])


class TestExamples:
    def test_empty_word(self):
        assert normalize(EDGE_23, []) == IDENTITY

    def test_relator_power(self):
        g = ProductGraph({"v": 7})
        assert normalize(g, [("v", 1)] * 7) == IDENTITY

    def test_edge_word_is_identity(self):
        assert normalize(EDGE_23, [("w", 1), ("u", 1), ("w", 2), ("u", 1)]) == IDENTITY

    def test_multiply_examples(self):
        g = ProductGraph({"v": 5})
        a = normalize(g, [("v", 2)])
        assert multiply(g, a, IDENTITY) == a
        assert multiply(g, ((("v", 1),)), (("v", 4),)) == IDENTITY
        u, w = (("u", 1),), (("w", 1),)
        assert multiply(EDGE_23, u, w) == multiply(EDGE_23, w, u) == (("u", 1), ("w", 1))

    def test_invert_examples(self):
        g = ProductGraph({"v": 6})
        assert invert(g, IDENTITY) == IDENTITY
        assert invert(g, (("v", 1),)) == (("v", 5),)

    def test_generator_step_examples(self):
        g = ProductGraph({"v": 5})
        assert is_generator_step(g, IDENTITY, (("v", 1),)) == "v"
        assert is_generator_step(g, IDENTITY, (("v", 4),)) == "v"
        assert is_generator_step(g, IDENTITY, (("v", 2),)) is None
        assert is_generator_step(g, IDENTITY, IDENTITY) is None

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            normalize(EDGE_23, [("x", 1)])

    def test_exponents_reduced(self):
        g = ProductGraph({"v": 5})
        assert normalize(g, [("v", -1)]) == (("v", 4),)
        assert normalize(g, [("v", 12)]) == (("v", 2),)

    def test_lex_least_shuffle(self):
        # b-c commute, a does not commute with either
        g = ProductGraph({"a": 2, "b": 2, "c": 2}, [("b", "c")])
        assert normalize(g, [("c", 1), ("b", 1), ("a", 1)]) == (("b", 1), ("c", 1), ("a", 1))
        assert normalize(g, [("a", 1), ("c", 1), ("b", 1)]) == (("a", 1), ("b", 1), ("c", 1))

    def test_merge_across_commuting_syllables(self):
        g = ProductGraph({"a": 3, "b": 2, "c": 2}, [("a", "b")])
        assert normalize(g, [("a", 1), ("b", 1), ("a", 2)]) == (("b", 1),)
        # c blocks the merge
        assert normalize(g, [("a", 1), ("c", 1), ("a", 2)]) == (("a", 1), ("c", 1), ("a", 2))

    def test_power(self):
        g = ProductGraph({"a": 2, "b": 3})
        x = normalize(g, [("a", 1), ("b", 1)])
        assert power(g, x, 0) == IDENTITY
        assert power(g, x, 2) == normalize(g, [("a", 1), ("b", 1)] * 2)
        assert multiply(g, power(g, x, -3), power(g, x, 3)) == IDENTITY


class TestTextSyntax:
    def test_parse_and_format(self):
        g = ProductGraph({"a": 2, "v": 5, "b": 2})
        w = parse_word(g, "a v^2 b")
        assert w == (("a", 1), ("v", 2), ("b", 1))
        assert format_word(w) == "a v^2 b"
        assert parse_word(g, "") == parse_word(g, "1") == IDENTITY
        assert format_word(IDENTITY) == ""

    def test_one_as_vertex_id(self):
        g = ProductGraph({"1": 3})
        assert parse_word(g, "1") == (("1", 1),)

    def test_bad_tokens(self):
        g = ProductGraph({"a": 2})
        with pytest.raises(GraphError):
            parse_word(g, "a^x")
        with pytest.raises(GraphError):
            parse_word(g, "b")

    @given(st.data())
    def test_round_trip(self, data):
        g = data.draw(product_graphs(max_vertices=5))
        w = normalize(g, data.draw(words(g)))
        assert parse_word(g, format_word(w)) == w


def _random_word(rng: random.Random, g: ProductGraph, length: int) -> list[tuple[str, int]]:
    return [(rng.choice(g.vertices), rng.randint(-6, 6)) for _ in range(length)]


def _relators(g: ProductGraph) -> list[list[tuple[str, int]]]:
    out = [[(v, 1)] * g.order(v) for v in g.vertices]
    for u, w in g.sorted_edges():
        out.append([(u, 1), (w, 1), (u, -1), (w, -1)])
    return out


class TestGroupAxioms:
    """Randomised axioms, 1000 trials each."""

    TRIALS = 1000
    GRAPHS = [
        ProductGraph({"a": 2, "b": 3, "c": 4, "d": 2}, [("a", "b"), ("b", "c"), ("c", "d")]),
        ProductGraph({"a": 5, "b": 2, "c": 2, "d": 3}, [("a", "b"), ("a", "c"), ("b", "c")]),
        ProductGraph({"a": 2, "b": 2, "c": 2, "d": 2}, [("a", "b"), ("c", "d"), ("b", "c")]),
    ]

    def test_inverses(self):
        rng = random.Random(11)
        for i in range(self.TRIALS):
            g = self.GRAPHS[i % 3]
            a = normalize(g, _random_word(rng, g, rng.randint(0, 15)))
            assert multiply(g, a, invert(g, a)) == IDENTITY
            assert multiply(g, invert(g, a), a) == IDENTITY

    def test_relator_insertion(self):
        rng = random.Random(12)
        for i in range(self.TRIALS):
            g = self.GRAPHS[i % 3]
            w = _random_word(rng, g, rng.randint(0, 15))
            rel = rng.choice(_relators(g))
            k = rng.randint(0, len(w))
            assert normalize(g, w[:k] + rel + w[k:]) == normalize(g, w)

    def test_associativity(self):
        rng = random.Random(13)
        for i in range(self.TRIALS):
            g = self.GRAPHS[i % 3]
            a, b, c = (normalize(g, _random_word(rng, g, rng.randint(0, 8))) for _ in range(3))
            assert multiply(g, multiply(g, a, b), c) == multiply(g, a, multiply(g, b, c))

    def test_identity(self):
        rng = random.Random(14)
        for i in range(self.TRIALS):
            g = self.GRAPHS[i % 3]
            a = normalize(g, _random_word(rng, g, rng.randint(0, 15)))
            assert multiply(g, a, IDENTITY) == multiply(g, IDENTITY, a) == a

    def test_outputs_are_normal_forms(self):
        rng = random.Random(15)
        for i in range(self.TRIALS):
            g = self.GRAPHS[i % 3]
            a = normalize(g, _random_word(rng, g, rng.randint(0, 20)))
            assert is_normal_form(g, a)
            assert normalize(g, a) == a


class TestOracles:
    def test_direct_product_matches_exponent_vectors(self):
        rng = random.Random(21)
        g = complete_graph([2, 3, 4, 5])
        for _ in range(500):
            w = _random_word(rng, g, rng.randint(0, 20))
            vec = {v: 0 for v in g.vertices}
            for v, e in w:
                vec[v] = (vec[v] + e) % g.order(v)
            expect = tuple((v, e) for v, e in sorted(vec.items()) if e)
            assert normalize(g, w) == expect

    def test_free_product_matches_stack_reduction(self):
        rng = random.Random(22)
        g = ProductGraph({"a": 2, "b": 3, "c": 5})
        for _ in range(500):
            w = _random_word(rng, g, rng.randint(0, 20))
            assert normalize(g, w) == free_product_reduce(g.orders, w)

    def test_clique_union(self):
        rng = random.Random(23)
        cliques = [["a", "b"], ["c"], ["d", "e", "f"]]
        g = ProductGraph(
            {"a": 2, "b": 3, "c": 2, "d": 4, "e": 2, "f": 3},
            [p for c in cliques for p in itertools.combinations(c, 2)],
        )
        for _ in range(500):
            w = _random_word(rng, g, rng.randint(0, 25))
            assert normalize(g, w) == clique_union_form(cliques, g.orders, w)

    def test_complete_multipartite(self):
        rng = random.Random(24)
        parts = [["a", "d"], ["b"], ["c", "e", "f"]]
        which = {v: i for i, p in enumerate(parts) for v in p}
        ids = sorted(which)
        g = ProductGraph(
            {"a": 2, "b": 3, "c": 2, "d": 3, "e": 2, "f": 4},
            [(u, w) for u, w in itertools.combinations(ids, 2) if which[u] != which[w]],
        )
        for _ in range(500):
            w = _random_word(rng, g, rng.randint(0, 25))
            assert normalize(g, w) == multipartite_form(parts, g.orders, w)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_coxeter_equality_matches_tits_representation(self, data):
        g = data.draw(product_graphs(min_vertices=2, max_vertices=5, max_order=2))
        w1 = data.draw(words(g, 10))
        # an equal word: insert a relator; an arbitrary word: fresh draw
        rels = _relators(g)
        rel = data.draw(st.sampled_from(rels))
        k = data.draw(st.integers(0, len(w1)))
        same = w1[:k] + rel + w1[k:]
        other = data.draw(words(g, 10))

        def mat(w):
            return tits_matrix(g.vertices, set(g.edges), w)

        for w in (same, other):
            assert (normalize(g, w1) == normalize(g, w)) == np.array_equal(mat(w1), mat(w))
        assert (normalize(g, w1) == IDENTITY) == np.array_equal(mat(w1), np.identity(len(g), dtype=object))


class TestCounting:
    @pytest.mark.parametrize("orders", [[2, 3], [2, 2, 2], [5, 4, 3], [2, 3, 4, 5], [7, 7, 7], [2, 2, 3, 3, 5]])
    def test_complete_graph_enumerates_product(self, orders):
        g = complete_graph(orders)
        seen = {IDENTITY}
        frontier = [IDENTITY]
        while frontier:
            nxt = []
            for x in frontier:
                for v in g.vertices:
                    y = right_multiply(g, x, v)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        assert len(seen) == math.prod(orders)

    def test_free_product_syllable_counts(self):
        g = ProductGraph({"a": 2, "b": 3, "c": 4})
        depth = 5
        # normal forms of syllable length <= depth, by syllable-wise extension
        levels = [{IDENTITY}]
        for _ in range(depth):
            nxt = set()
            for x in levels[-1]:
                for v in g.vertices:
                    for e in range(1, g.order(v)):
                        y = right_multiply(g, x, v, e)
                        if len(y) == len(x) + 1:
                            nxt.add(y)
            levels.append(nxt)
        # closed-form recursion: ending in v, length L
        ends = {v: g.order(v) - 1 for v in g.vertices}
        expect = [1, sum(ends.values())]
        for _ in range(depth - 1):
            ends = {v: (g.order(v) - 1) * sum(c for u, c in ends.items() if u != v) for v in g.vertices}
            expect.append(sum(ends.values()))
        assert [len(level) for level in levels] == expect


@given(st.data())
def test_subgroup_normal_forms_agree(data):
    g = data.draw(product_graphs(max_vertices=6))
    sub = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1))
    h = induced_subgraph(g, sub)
    w = data.draw(words(h))
    assert normalize(g, w) == normalize(h, w)


@given(st.data())
def test_generator_step_is_symmetric(data):
    g = data.draw(product_graphs(max_vertices=5))
    a = normalize(g, data.draw(words(g)))
    v = data.draw(st.sampled_from(g.vertices))
    e = data.draw(st.sampled_from([1, -1]))
    b = right_multiply(g, a, v, e)
    assert is_generator_step(g, a, b) == v
    assert is_generator_step(g, b, a) == v


def test_is_normal_form_rejects():
    g = ProductGraph({"a": 3, "b": 2, "c": 2}, [("a", "b")])
    assert is_normal_form(g, (("a", 1), ("b", 1)))
    assert not is_normal_form(g, (("b", 1), ("a", 1)))  # commuting, out of order
    assert not is_normal_form(g, (("a", 1), ("b", 1), ("a", 1)))  # mergeable
    assert not is_normal_form(g, (("a", 3),))
    assert not is_normal_form(g, (("a", 0),))
    assert not is_normal_form(g, (("z", 1),))
    assert is_normal_form(g, (("a", 1), ("c", 1), ("a", 1)))


def test_word_length_examples():
    g = ProductGraph({"v": 7, "a": 2})
    assert word_length(g, IDENTITY) == 0
    assert word_length(g, (("v", 3),)) == 3
    assert word_length(g, (("v", 5),)) == 2
    assert word_length(g, (("a", 1), ("v", 6))) == 2
