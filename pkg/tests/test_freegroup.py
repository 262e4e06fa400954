from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from napdec.affine_group import is_identity, trace
from napdec.errors import BoundExceeded
from napdec.freegroup import (Letter, Piece, _membership_counts, classify, count_words,
                              enumerate_words, evaluate, is_reduced, multiply, parse_word, reduce,
                              relation_audit, verify_group_paradox, walk, word_inverse)
from napdec.generators import build_magnus
from napdec.valued_fields import FieldCtx

from oracles import free_reduce_fixpoint, homogeneous, reduced_words_brute, sympy_matrix_word

Q2 = FieldCtx.padic(2)
MAGNUS = build_magnus(Q2, 1, 2, Fraction(1, 2))
words = st.text(alphabet="aAbB", max_size=14)


def test_reduce_examples():
    A, Ai, B, Bi = Letter.A, Letter.Ainv, Letter.B, Letter.Binv
    assert reduce([A, Ai]) == ""
    assert reduce([A, B, Bi, A]) == "aa"
    assert reduce([B, A, Ai, Bi, A]) == "a"
    assert reduce("bAaBa") == "a"


@given(words)
def test_reduce_matches_fixpoint_oracle(w):
    r = reduce(w)
    assert r == free_reduce_fixpoint(w)
    assert is_reduced(r)
    assert reduce(w + word_inverse(w)) == ""


@given(words, words, words)
def test_multiplication_is_associative(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))


def test_enumeration_matches_brute_force():
    # brute force over all 4^k strings, frozen count 1+4+12+36+108 = 161
    brute = reduced_words_brute(4)
    ours = list(enumerate_words(4))
    assert sorted(brute) == sorted(ours) and len(ours) == 161
    assert ours == sorted(ours, key=lambda w: (len(w), ["aAbB".index(x) for x in w]))


@pytest.mark.parametrize("n,count", [(0, 1), (1, 5), (3, 53)])
def test_enumeration_counts(n, count):
    assert len(list(enumerate_words(n))) == count
    assert sum(count_words(k) for k in range(n + 1)) == count


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_words(13))
    with pytest.raises(BoundExceeded):
        list(walk(MAGNUS.gens, 13))


def test_evaluate_examples():
    assert is_identity(evaluate("", MAGNUS.gens))
    assert evaluate("a", MAGNUS.gens) == MAGNUS.a
    assert trace(evaluate("ab", MAGNUS.gens).L) == 1170


def test_walk_agrees_with_evaluate_and_sympy():
    a = homogeneous(MAGNUS.a.L, MAGNUS.a.tau)
    b = homogeneous(MAGNUS.b.L, MAGNUS.b.tau)
    for w, g in walk(MAGNUS.gens, 3):
        assert g == evaluate(w, MAGNUS.gens)
        S = sympy_matrix_word(w, a, b)
        assert [Fraction(str(S[i, j])) for i in range(2) for j in range(2)] == \
            [c for row in g.L for c in row]
        assert [Fraction(str(S[i, 2])) for i in range(2)] == list(g.tau)


def test_relation_audit():
    assert relation_audit(MAGNUS.gens, 6) == []
    same = (MAGNUS.a, MAGNUS.a)
    assert "Ab" in relation_audit(same, 2)


@pytest.mark.parametrize("w,piece", [
    ("", Piece.P1), ("AB", Piece.P2), ("AA", Piece.P1), ("a", Piece.P1), ("A", Piece.P1),
    ("Ab", Piece.P2), ("bA", Piece.P3), ("Ba", Piece.P4)])
def test_classify(w, piece):
    assert classify(w) is piece


def test_misplacing_a_powers_breaks_the_identity():
    # with A^k in P2 the identity would lie in both P1 and a(P2)
    alt = lambda u: Piece.P2 if u and u[0] == "A" else classify(u)
    hits = (alt("") is Piece.P1) + (alt(multiply("A", "")) is Piece.P2)
    assert hits == 2


@given(words)
def test_classify_partition(w):
    w = reduce(w)
    hits = [p for p, inside in _membership_counts(w).items() if inside]
    assert hits == [classify(w)]


@pytest.mark.parametrize("n,total", [(3, 17), (5, 161)])
def test_group_paradox_small(n, total):
    report = verify_group_paradox(n)
    assert report.ok
    assert report.summary["words_with_identity"] == total
    assert report.summary["words"] == total - 1


def test_parse_word():
    assert parse_word(" abBA ") == ""
    with pytest.raises(ValueError):
        parse_word("abc")
