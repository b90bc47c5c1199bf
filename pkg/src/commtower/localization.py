"""The localized tower group: tower elements paired with exact rationals.

An element is a pair (word part at some tower level, rational part), taken
modulo the identification of the seed word with the rational 1.  The word
part therefore absorbs the integer part of the rational during
normalization, and the rational-mod-1 coordinate survives as a homomorphism
onto Q/Z.  That quotient is abelian, so every commutator lands at 0 while
(empty word, 1/2) does not: the group cannot equal its own commutator
subgroup.

Full equality of elements is *not* decided here (the word problem at levels
beyond 1 is out of scope); the sound observables are the Q/Z image and,
through the tower, exponent sums and matrix images at a common level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .tower import doubling_map, level_rank, seed_word
from .words import RankMismatchError, Word, word_str


@dataclass(frozen=True)
class LPElement:
    level: int
    word: Word
    rational: Fraction

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"level must be nonnegative, got {self.level}")
        if self.word.rank != level_rank(self.level):
            raise RankMismatchError(
                f"word rank {self.word.rank} does not match level {self.level}")

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "word": word_str(self.word),
            "rational": str(self.rational),
        }


def lp_element(level: int, word: Word | None = None,
               rational: Fraction | int | str = 0) -> LPElement:
    if word is None:
        word = Word(level_rank(level))
    return LPElement(level=level, word=word, rational=Fraction(rational))


def lp_include(w: Word, level: int) -> LPElement:
    """The inclusion of a tower word: rational part zero."""
    return LPElement(level=level, word=w, rational=Fraction(0))


def lift_word(w: Word, from_level: int, to_level: int) -> Word:
    """Push a word up the tower through the doubling maps."""
    if to_level < from_level:
        raise ValueError("cannot lift downward")
    for n in range(from_level, to_level):
        w = doubling_map(n, w)
    return w


def lp_normalize(e: LPElement) -> LPElement:
    """Move the integer part of the rational into the word part.

    (w, r) ~ (seed^floor(r) * w, r - floor(r)); the result has rational part
    in [0, 1) and represents the same class.  Idempotent.
    """
    m = e.rational.numerator // e.rational.denominator
    if m == 0:
        return e
    word = (seed_word(e.level) ** m) * e.word
    return LPElement(level=e.level, word=word, rational=e.rational - m)


def lp_invert(e: LPElement) -> LPElement:
    return LPElement(level=e.level, word=e.word.inverse(), rational=-e.rational)


def lp_multiply(a: LPElement, b: LPElement) -> LPElement:
    """Multiply after lifting both word parts to the higher level."""
    level = max(a.level, b.level)
    wa = lift_word(a.word, a.level, level)
    wb = lift_word(b.word, b.level, level)
    return lp_normalize(
        LPElement(level=level, word=wa * wb, rational=a.rational + b.rational))


def lp_commutator(a: LPElement, b: LPElement) -> LPElement:
    return lp_multiply(lp_multiply(lp_invert(a), lp_invert(b)),
                       lp_multiply(a, b))


def lp_qz_image(e: LPElement) -> Fraction:
    """The induced image in Q/Z: the rational part mod 1.

    A homomorphism onto (Q/Z, +) whose kernel contains every included tower
    word, hence every commutator.
    """
    return e.rational % 1
