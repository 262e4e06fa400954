"""Reduced words in the free group on ``a, b`` and the four-piece split.

Words are plain strings over ``"aAbB"``; a capital letter is the inverse, so
``"aBa"`` is ``a b^-1 a``.  Shortlex order uses ``a < A < b < B``.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator

from .affine_group import AffineMap, compose, inverse, is_identity
from .errors import BoundExceeded
from .report import Report

LETTERS = "aAbB"
INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}
MAX_WORD_LENGTH = 12


class Letter(enum.Enum):
    A = "a"
    Ainv = "A"
    B = "b"
    Binv = "B"

    @property
    def inverse(self) -> "Letter":
        return Letter(INVERSE[self.value])


class Piece(enum.Enum):
    P1 = 1
    P2 = 2
    P3 = 3
    P4 = 4


def _letters(seq) -> Iterator[str]:
    for x in seq:
        x = x.value if isinstance(x, Letter) else x
        if x not in INVERSE:
            raise ValueError(f"not a letter: {x!r}")
        yield x


def reduce(seq: Iterable) -> str:
    """Free reduction by a single stack pass."""
    out: list[str] = []
    for x in _letters(seq):
        if out and out[-1] == INVERSE[x]:
            out.pop()
        else:
            out.append(x)
    return "".join(out)


def is_reduced(w: str) -> bool:
    return all(INVERSE[x] != y for x, y in zip(w, w[1:]))


def word_inverse(w: str) -> str:
    return "".join(INVERSE[x] for x in reversed(w))


def multiply(u: str, v: str) -> str:
    return reduce(u + v)


def count_words(length: int) -> int:
    return 1 if length == 0 else 4 * 3 ** (length - 1)


def _extend(words: list[str]) -> list[str]:
    return [w + x for w in words for x in LETTERS if not w or INVERSE[x] != w[-1]]


def enumerate_words(max_len: int, bound: int = MAX_WORD_LENGTH) -> Iterator[str]:
    """All reduced words of length <= ``max_len`` in shortlex order."""
    if max_len > bound:
        raise BoundExceeded(f"word length {max_len} exceeds bound {bound}")
    level = [""]
    for _ in range(max_len + 1):
        yield from level
        level = _extend(level)


def _generator_maps(gens: tuple[AffineMap, AffineMap]) -> dict[str, AffineMap]:
    a, b = gens
    return {"a": a, "A": inverse(a), "b": b, "B": inverse(b)}


def _identity_like(g: AffineMap) -> AffineMap:
    z = g.L[0][0] - g.L[0][0]
    n = g.dim
    return AffineMap(tuple(tuple(z + 1 if i == j else z for j in range(n)) for i in range(n)),
                     (z,) * n)


def evaluate(w: str, gens: tuple[AffineMap, AffineMap]) -> AffineMap:
    maps = _generator_maps(gens)
    result = _identity_like(gens[0])
    for x in w:
        result = compose(result, maps[x])
    return result


def walk(gens: tuple[AffineMap, AffineMap], max_len: int,
         bound: int = MAX_WORD_LENGTH) -> Iterator[tuple[str, AffineMap]]:
    """Yield ``(w, evaluate(w))`` for nonempty reduced words, shortlex order.

    Each level reuses the previous one, so a word costs one composition.
    """
    if max_len > bound:
        raise BoundExceeded(f"word length {max_len} exceeds bound {bound}")
    maps = _generator_maps(gens)
    level = [(x, maps[x]) for x in LETTERS] if max_len >= 1 else []
    for _ in range(max_len):
        yield from level
        level = [(w + x, compose(g, maps[x])) for w, g in level
                 for x in LETTERS if INVERSE[x] != w[-1]]


def relation_audit(gens: tuple[AffineMap, AffineMap], max_len: int) -> list[str]:
    """Nonempty reduced words of length <= ``max_len`` that evaluate to the identity."""
    return [w for w, g in walk(gens, max_len) if is_identity(g)]


def classify(w: str) -> Piece:
    if not w or w[0] == "a" or set(w) == {"A"}:
        return Piece.P1
    if w[0] == "A":
        return Piece.P2
    if w[0] == "b":
        return Piece.P3
    return Piece.P4


def _membership_counts(w: str) -> dict:
    # independent predicates for the four pieces, used to test classify
    pure_ainv = set(w) <= {"A"}
    return {
        Piece.P1: (bool(w) and w[0] == "a") or pure_ainv,
        Piece.P2: bool(w) and w[0] == "A" and not pure_ainv,
        Piece.P3: bool(w) and w[0] == "b",
        Piece.P4: bool(w) and w[0] == "B",
    }


def verify_group_paradox(max_len: int) -> Report:
    """Check ``F2 = P1 + a(P2) = P3 + b(P4)`` on words shorter than ``max_len``."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    report = Report("group-paradox", summary={"max_len": max_len})
    nonempty = 0
    for w in enumerate_words(max_len - 1):
        report.checked += 1
        nonempty += bool(w)
        hits = [p for p, inside in _membership_counts(w).items() if inside]
        if hits != [classify(w)]:
            report.add(condition="partition", word=w, pieces=[p.name for p in hits])
        # w is in a(P2) iff a^-1 w is in P2; likewise for b
        in_a_p2 = classify(multiply("A", w)) is Piece.P2
        if (classify(w) is Piece.P1) + in_a_p2 != 1:
            report.add(condition="A1 + a(A2)", word=w)
        in_b_p4 = classify(multiply("B", w)) is Piece.P4
        if (classify(w) is Piece.P3) + in_b_p4 != 1:
            report.add(condition="A3 + b(A4)", word=w)
    report.summary.update(words=nonempty, words_with_identity=report.checked)
    return report


def parse_word(text: str) -> str:
    w = "".join(_letters(text.strip()))
    return reduce(w)


def word_letters(w: str) -> list[Letter]:
    return [Letter(x) for x in w]

