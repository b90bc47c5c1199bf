"""Exact word calculus in finitely generated free groups.

A letter is a nonzero signed integer: ``+i`` is the i-th generator of the
alphabet, ``-i`` its inverse.  A :class:`Word` is a freely reduced tuple of
letters over a declared alphabet rank.  Words are immutable values and every
operation returns a fresh word, so everything here is safe to share between
threads.

The commutator convention throughout is ``[a, b] = a^-1 b^-1 a b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class AlphabetError(ValueError):
    """A letter refers to a generator outside the declared alphabet."""


class RankMismatchError(ValueError):
    """Operands live over free groups of different ranks."""


def _reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for let in letters:
        if out and out[-1] == -let:
            out.pop()
        else:
            out.append(let)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over the free group of the given rank."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise AlphabetError(f"rank must be nonnegative, got {self.rank}")
        for let in self.letters:
            if let == 0 or abs(let) > self.rank:
                raise AlphabetError(
                    f"letter {let} outside alphabet of rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError(f"letters {self.letters} are not freely reduced")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        if self.rank != other.rank:
            raise RankMismatchError(
                f"cannot multiply words of rank {self.rank} and {other.rank}")
        return Word(self.rank, _reduce_letters(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(self.rank, tuple(-let for let in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word(self.rank)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self) -> str:
        return word_str(self)

    def __repr__(self) -> str:
        return f"Word({self.rank}, {word_str(self)!r})"


def empty_word(rank: int) -> Word:
    return Word(rank)


def generator(rank: int, index: int) -> Word:
    """The one-letter word for generator ``index`` (1-based)."""
    if not 1 <= index <= rank:
        raise AlphabetError(f"generator {index} outside alphabet of rank {rank}")
    return Word(rank, (index,))


def reduce_word(letters: Iterable[int], rank: int) -> Word:
    """Freely reduce a raw letter sequence.  Idempotent."""
    letters = tuple(letters)
    for let in letters:
        if let == 0 or abs(let) > rank:
            raise AlphabetError(f"letter {let} outside alphabet of rank {rank}")
    return Word(rank, _reduce_letters(letters))


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return u.inverse()


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    if a.rank != b.rank:
        raise RankMismatchError(
            f"cannot form commutator across ranks {a.rank} and {b.rank}")
    return a.inverse() * b.inverse() * a * b


def conjugate(w: Word, g: Word) -> Word:
    """g^-1 w g."""
    return g.inverse() * w * g


def is_cyclically_reduced(w: Word) -> bool:
    return len(w) == 0 or w.letters[0] != -w.letters[-1]


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w = conjugator^-1 * core * conjugator`` with cyclically reduced core.

    The core is empty iff ``w`` is empty (a reduced word can never peel away
    completely).
    """
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    core = Word(w.rank, letters[i:j + 1]) if i <= j else Word(w.rank)
    prefix = Word(w.rank, letters[:i])
    return core, prefix.inverse()


def is_conjugate(u: Word, v: Word) -> bool:
    """Conjugacy in the free group: cyclic reduction + rotation matching."""
    if u.rank != v.rank:
        raise RankMismatchError(
            f"cannot compare words of rank {u.rank} and {v.rank}")
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if len(cu) == 0:
        return True
    a, b = cu.letters, cv.letters
    return any(a[i:] + a[:i] == b for i in range(len(a)))


def primitive_root(w: Word) -> tuple[Word, int]:
    """Write ``w = root^exponent`` with the root not a proper power.

    Cyclically reduce, find the shortest period of the core by rotation
    equality over the divisors of its length, then conjugate back.
    """
    if len(w) == 0:
        raise ValueError("the empty word has no primitive root")
    core, conj = cyclic_reduce(w)
    n = len(core)
    for d in range(1, n + 1):
        if n % d:
            continue
        block = core.letters[:d]
        if block * (n // d) == core.letters:
            root_core = Word(w.rank, block)
            root = conj.inverse() * root_core * conj
            return root, n // d
    raise AssertionError("unreachable: every word has period equal to its length")


def support(w: Word) -> frozenset[int]:
    """The set of generator indices occurring in ``w`` (either sign)."""
    return frozenset(abs(let) for let in w.letters)


def exponent_sum(w: Word) -> tuple[int, ...]:
    """Abelianization vector: signed letter count per generator."""
    sums = [0] * w.rank
    for let in w.letters:
        sums[abs(let) - 1] += 1 if let > 0 else -1
    return tuple(sums)


def cyclic_subgroup_exponent(u: Word, v: Word) -> Optional[int]:
    """Return k with ``v = u^k`` if one exists, else None.

    Since |u^k| >= |k|*|core(u)| - 2*|conjugator(u)|, any solution satisfies
    |k| <= 2*|v| / |core(u)| + 2, so the search below is exhaustive.
    """
    if u.rank != v.rank:
        raise RankMismatchError(
            f"cannot compare words of rank {u.rank} and {v.rank}")
    if len(u) == 0:
        raise ValueError("u must be nonempty")
    if len(v) == 0:
        return 0
    core, _ = cyclic_reduce(u)
    bound = 2 * len(v) // len(core) + 2
    acc = u ** (-bound)
    for k in range(-bound, bound + 1):
        if acc == v:
            return k
        acc = acc * u
    return None


def _letter_key(let: int) -> tuple[int, int]:
    # generator index first, then positive before negative
    return (abs(let), 0 if let > 0 else 1)


def shortlex_key(w: Word) -> tuple:
    return (len(w), tuple(_letter_key(let) for let in w.letters))


def coset_rep(u: Word, w: Word) -> Word:
    """Canonical (shortlex-minimal) representative of the right coset <u>w.

    Every coset element of length <= |w| is of the form u^k w with
    |k| <= (2|w| + 2|conjugator(u)|) / |core(u)|, so scanning that window
    finds the global shortlex minimum of the coset.  In particular the
    representative of <u> itself is the empty word.
    """
    if u.rank != w.rank:
        raise RankMismatchError(
            f"cannot form coset across ranks {u.rank} and {w.rank}")
    if len(u) == 0:
        raise ValueError("u must be nonempty")
    core, conj = cyclic_reduce(u)
    bound = (2 * len(w) + 2 * len(conj)) // len(core) + 2
    best = None
    best_key = None
    acc = u ** (-bound)
    for _ in range(-bound, bound + 1):
        cand = acc * w
        key = shortlex_key(cand)
        if best_key is None or key < best_key:
            best, best_key = cand, key
        acc = acc * u
    assert best is not None
    return best


def shift_index(w: Word, offset: int, rank: int) -> Word:
    """Relabel generators i -> i + offset into an alphabet of the given rank."""
    letters = tuple(
        let + offset if let > 0 else let - offset for let in w.letters)
    return Word(rank, letters)


_TOKEN_RE = re.compile(r"^([xX])([0-9]+)$")


def parse_word(text: str, rank: int) -> Word:
    """Parse the word grammar: tokens ``x<i>`` / ``X<i>``, the sole token ``e``
    for the empty word.  Rejects index 0 and indices above the rank."""
    tokens = text.split()
    if tokens == ["e"]:
        return Word(rank)
    letters = []
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        index = int(m.group(2))
        if index == 0 or index > rank:
            raise AlphabetError(
                f"token {tok!r} outside alphabet of rank {rank}")
        letters.append(index if m.group(1) == "x" else -index)
    return Word(rank, _reduce_letters(letters))


def word_str(w: Word) -> str:
    """Inverse of :func:`parse_word` on reduced words."""
    if not w.letters:
        return "e"
    return " ".join(
        f"x{let}" if let > 0 else f"X{-let}" for let in w.letters)


def reduced_words(rank: int, max_len: int) -> Iterator[Word]:
    """All freely reduced words of length <= max_len, in graded shortlex order."""
    alphabet = sorted(
        [let for i in range(1, rank + 1) for let in (i, -i)], key=_letter_key)

    def exact(prefix: list[int], remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for let in alphabet:
            if prefix and prefix[-1] == -let:
                continue
            prefix.append(let)
            yield from exact(prefix, remaining - 1)
            prefix.pop()

    for length in range(max_len + 1):
        for letters in exact([], length):
            yield Word(rank, letters)


def random_reduced_word(rng, rank: int, length: int) -> Word:
    """A uniformly chosen freely reduced word of exactly the given length."""
    letters: list[int] = []
    for _ in range(length):
        choices = [
            let for i in range(1, rank + 1) for let in (i, -i)
            if not letters or letters[-1] != -let]
        letters.append(rng.choice(choices))
    return Word(rank, tuple(letters))
