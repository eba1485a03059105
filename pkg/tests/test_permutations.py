from itertools import product

import pytest
from hypothesis import given, strategies as st

from qmatball import permutations as P

SIGMA = (3, 4, 1, 2)


def brute_length(p):
    """Shortest word length by breadth-first search over S_n."""
    n = len(p)
    frontier, seen, d = {P.identity(n)}, {P.identity(n)}, 0
    while tuple(p) not in frontier:
        d += 1
        frontier = {P.compose(x, P.transposition(i, n)) for x in frontier for i in range(1, n)} - seen
        seen |= frontier
    return d


def test_compose_identity_and_inverse():
    p = (2, 4, 1, 3)
    assert P.compose(P.identity(4), p) == p
    assert P.compose(p, P.inverse(p)) == P.identity(4)


def test_sigma_word_product():
    assert P.word_product((2, 1, 3, 2), 4) == SIGMA


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        P.compose((1, 2), (1, 2, 3))


def test_length_examples():
    assert P.length(P.identity(4)) == 0
    assert P.length(SIGMA) == 4
    assert P.length((2, 1)) == 1


def test_is_reduced_examples():
    assert P.is_reduced((2, 1, 3, 2), 4)
    assert not P.is_reduced((1, 1), 2)
    assert P.is_reduced((1, 2, 1), 3)
    assert P.length((3, 2, 1)) == brute_length((3, 2, 1)) == 3


def test_reduced_words_examples():
    assert P.reduced_words(P.identity(3)) == {()}
    assert P.reduced_words((2, 1)) == {(1,)}
    words = P.reduced_words(SIGMA)
    expected = {w for w in product((1, 2, 3), repeat=4) if P.word_product(w, 4) == SIGMA}
    assert words == expected
    assert {(2, 1, 3, 2), (2, 3, 1, 2)} <= words


def test_reduced_words_guard():
    with pytest.raises(ValueError):
        P.reduced_words(P.identity(P.MAX_ENUM_N + 1))


S4 = P.all_permutations(4)


def test_length_is_minimal_word_length_on_s4():
    for p in S4:
        assert P.length(p) == brute_length(p)


def test_subadditivity_exhaustive():
    for s in S4:
        for t in S4:
            assert P.length(P.compose(s, t)) <= P.length(s) + P.length(t)


def test_inverse_length_exhaustive():
    for s in S4:
        assert P.length(P.inverse(s)) == P.length(s)


def test_reduced_words_are_reduced_on_s4():
    for p in S4:
        for w in P.reduced_words(p):
            assert P.is_reduced(w, 4) and P.word_product(w, 4) == p


@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_composition_associates_with_inverse(p, r):
    p, r = tuple(p), tuple(r)
    assert P.inverse(P.compose(p, r)) == P.compose(P.inverse(r), P.inverse(p))
