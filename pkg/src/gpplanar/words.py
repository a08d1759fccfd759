"""Syllable normal forms for graph products of finite cyclic groups.

An element is a tuple of syllables ``(vertex, exponent)`` with
``0 < exponent < order(vertex)``.  A word is *reduced* when no two syllables of
the same vertex can be shuffled together past syllables of adjacent vertices;
reduced words of the same element differ only by such shuffles, so the
lexicographically least shuffle (by vertex id) is a canonical form.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .graph_model import GraphError, ProductGraph

__all__ = [
    "Syllable",
    "NormalForm",
    "IDENTITY",
    "normalize",
    "multiply",
    "invert",
    "power",
    "is_generator_step",
    "word_length",
    "is_normal_form",
    "right_multiply",
    "parse_word",
    "format_word",
]

Syllable = tuple[str, int]
NormalForm = tuple[Syllable, ...]

IDENTITY: NormalForm = ()


def _lex_sort(g: ProductGraph, sylls: list[Syllable]) -> NormalForm:
    """Lexicographically least shuffle of a reduced word."""
    rest = sylls
    out: list[Syllable] = []
    while rest:
        best = -1
        seen: list[str] = []
        for i, (v, _) in enumerate(rest):
            nv = g.neighbors(v)
            if all(u in nv for u in seen):
                if best < 0 or v < rest[best][0]:
                    best = i
            seen.append(v)
        out.append(rest[best])
        rest = rest[:best] + rest[best + 1 :]
    return tuple(out)


def _push(g: ProductGraph, word: list[Syllable], v: str, e: int) -> bool:
    """Append syllable ``v^e`` to a reduced word in place.

    Returns True when a syllable was deleted (so the word needs re-sorting
    for more than the tail position).
    """
    n = g.order(v)
    e %= n
    if e == 0:
        return False
    nv = g.neighbors(v)
    for i in range(len(word) - 1, -1, -1):
        u, f = word[i]
        if u == v:
            s = (f + e) % n
            if s:
                word[i] = (v, s)
                return False
            del word[i]
            return True
        if u not in nv:
            break
    word.append((v, e))
    return False


def normalize(g: ProductGraph, word: Iterable[Sequence]) -> NormalForm:
    """Canonical form of a word given as ``(vertex, exponent)`` pairs.

    Exponents may be any integers; they are reduced modulo the vertex order.

    >>> g = ProductGraph({"u": 2, "w": 3}, [("u", "w")])
    >>> normalize(g, [("w", 1), ("u", 1), ("w", 2), ("u", 1)])
    ()
    """
    out: list[Syllable] = []
    for syl in word:
        v, e = syl
        if v not in g:
            raise GraphError(f"unknown vertex {v!r} in word")
        _push(g, out, v, e)
    return _lex_sort(g, out)


def right_multiply(g: ProductGraph, a: NormalForm, v: str, e: int = 1) -> NormalForm:
    """``a * v^e`` for a normal form ``a``; the hot path of ball generation."""
    word = list(a)
    _push(g, word, v, e)
    return _lex_sort(g, word)


def multiply(g: ProductGraph, a: NormalForm, b: NormalForm) -> NormalForm:
    word = list(a)
    for v, e in b:
        _push(g, word, v, e)
    return _lex_sort(g, word)


def invert(g: ProductGraph, a: NormalForm) -> NormalForm:
    return _lex_sort(g, [(v, g.order(v) - e) for v, e in reversed(a)])


def power(g: ProductGraph, a: NormalForm, k: int) -> NormalForm:
    if k < 0:
        a, k = invert(g, a), -k
    out = IDENTITY
    for _ in range(k):
        out = multiply(g, out, a)
    return out


def is_generator_step(g: ProductGraph, a: NormalForm, b: NormalForm) -> str | None:
    """The vertex ``v`` with ``b = a * a_v^{+-1}``, or None.

    This is adjacency in the undirected simple Cayley graph.
    """
    d = multiply(g, invert(g, a), b)
    if len(d) != 1:
        return None
    v, e = d[0]
    if e == 1 or e == g.order(v) - 1:
        return v
    return None


def word_length(g: ProductGraph, a: NormalForm) -> int:
    """Distance from the identity in the Cayley graph.

    A syllable ``v^e`` costs ``min(e, order - e)`` generator steps and
    normal forms are geodesic syllable by syllable.
    """
    return sum(min(e, g.order(v) - e) for v, e in a)


def is_normal_form(g: ProductGraph, a: Sequence[Syllable]) -> bool:
    """Check the canonical-form invariants directly.

    * every exponent lies in ``1..order-1``;
    * no syllable can be shuffled left onto an earlier syllable of its vertex;
    * no syllable can be shuffled left past a larger-id syllable that it
      commutes with along with everything in between.
    """
    for v, e in a:
        if v not in g or not 0 < e < g.order(v):
            return False
    for j, (v, _) in enumerate(a):
        nv = g.neighbors(v)
        for i in range(j - 1, -1, -1):
            u = a[i][0]
            if u == v:
                return False
            if u not in nv:
                break
            if u > v and all(w in nv for w, _ in a[i:j]):
                return False
    return True


def parse_word(g: ProductGraph, text: str) -> NormalForm:
    """Parse whitespace-separated ``id^e`` tokens (``e`` defaults to 1).

    The empty string and the token ``1`` (when ``1`` is not a vertex id)
    denote the identity.
    """
    word = []
    for tok in text.split():
        if tok == "1" and "1" not in g:
            continue
        v, sep, exp = tok.partition("^")
        try:
            e = int(exp) if sep else 1
        except ValueError:
            raise GraphError(f"bad exponent in token {tok!r}") from None
        word.append((v, e))
    return normalize(g, word)


def format_word(a: Sequence[Syllable]) -> str:
    """Inverse of :func:`parse_word`; the identity formats as ``""``."""
    return " ".join(v if e == 1 else f"{v}^{e}" for v, e in a)
