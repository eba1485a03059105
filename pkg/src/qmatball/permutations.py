"""Symmetric-group helpers: one-line permutations, lengths and reduced words.

Permutations are tuples in one-line notation on ``{1, ..., n}``; words are
tuples of adjacent-transposition indices ``i`` standing for ``s_i = (i, i+1)``.
A word ``(j1, ..., jm)`` multiplies to ``s_j1 s_j2 ... s_jm`` with the usual
right-to-left action on points.
"""
from __future__ import annotations

from itertools import permutations as _all_perms
from typing import Iterable, Sequence

Permutation = tuple[int, ...]
Word = tuple[int, ...]

MAX_ENUM_N = 6


def _check(p: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def transposition(i: int, n: int) -> Permutation:
    """The adjacent transposition ``s_i`` in ``S_n``."""
    if not 1 <= i < n:
        raise ValueError(f"s_{i} does not exist in S_{n}")
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def compose(p: Sequence[int], r: Sequence[int]) -> Permutation:
    """Return ``p o r``, i.e. ``x -> p(r(x))``."""
    p, r = _check(p), _check(r)
    if len(p) != len(r):
        raise ValueError(f"size mismatch: S_{len(p)} vs S_{len(r)}")
    return tuple(p[x - 1] for x in r)


def inverse(p: Sequence[int]) -> Permutation:
    p = _check(p)
    inv = [0] * len(p)
    for i, x in enumerate(p, start=1):
        inv[x - 1] = i
    return tuple(inv)


def length(p: Sequence[int]) -> int:
    """Inversion count, which equals the length of any reduced word."""
    p = _check(p)
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def word_product(w: Iterable[int], n: int) -> Permutation:
    out = identity(n)
    for i in w:
        out = compose(out, transposition(i, n))
    return out


def is_reduced(w: Sequence[int], n: int | None = None) -> bool:
    w = tuple(w)
    if n is None:
        n = max(w, default=0) + 1
    if any(not 1 <= i < n for i in w):
        raise ValueError(f"word {w} has letters outside 1..{n - 1}")
    return len(w) == length(word_product(w, n))


def reduced_words(p: Sequence[int]) -> set[Word]:
    """All reduced words of ``p``.

    Depth-first search peeling off right descents: ``p s_i`` is shorter than
    ``p`` exactly when ``p(i) > p(i+1)``, so every branch stays reduced.
    """
    p = _check(p)
    n = len(p)
    if n > MAX_ENUM_N:
        raise ValueError(f"reduced_words is limited to n <= {MAX_ENUM_N}, got {n}")
    cache: dict[Permutation, set[Word]] = {}

    def rec(x: Permutation) -> set[Word]:
        if x in cache:
            return cache[x]
        descents = [i for i in range(1, n) if x[i - 1] > x[i]]
        if not descents:
            res = {()}
        else:
            res = set()
            for i in descents:
                for w in rec(compose(x, transposition(i, n))):
                    res.add(w + (i,))
        cache[x] = res
        return res

    return rec(p)


def all_permutations(n: int) -> list[Permutation]:
    return [tuple(x) for x in _all_perms(range(1, n + 1))]
