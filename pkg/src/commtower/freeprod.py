"""Free products of two free groups and the commuting-relator quotient.

Elements of ``F1 * F2`` are syllable words: alternating nonempty reduced
words drawn from the two factors.  Quotienting by the normal closure of
``[u1, u2]`` (one designated word per factor, neither a proper power) gives
the group G studied here.

Equality in G is decided through the kernel K of the projection
``G -> F1 (+) F2``:

* a syllable word with trivial projection is collected into a product of
  honest commutators ``[v1, v2]`` (the free basis of the kernel before the
  relator is imposed);
* each such commutator is rewritten into the surviving free basis of K via
  ``[w1, w2] = [w1, s2][s2, s1][s1, w2]`` where ``s_i`` is the canonical
  representative of the coset ``<u_i> w_i``;
* the result reduces freely over the basis symbols, and is empty iff the
  element is trivial in G.

Soundness of the decision needs nothing beyond the rewriting identities,
which hold in G outright; completeness rests on K being free on the stated
symbols.  A seeded homomorphism onto a symmetric group is kept alongside as
an independent refutation oracle, and :func:`commutation_scan` uses the
whole apparatus to hunt for pairs that commute with their commutator.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .words import (
    RankMismatchError,
    Word,
    coset_rep,
    is_cyclically_reduced,
    primitive_root,
    support,
    word_str,
)


class VerificationError(AssertionError):
    """A computation that should certify an identity failed to do so."""


# ---------------------------------------------------------------------------
# syllable words


@dataclass(frozen=True)
class SyllableWord:
    """Normal form of an element of F1 * F2: alternating nonempty syllables."""

    rank1: int
    rank2: int
    syllables: tuple[tuple[int, Word], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for factor, w in self.syllables:
            if factor not in (1, 2):
                raise ValueError(f"factor tag must be 1 or 2, got {factor}")
            if w.is_identity:
                raise ValueError("syllables must be nonempty")
            expected = self.rank1 if factor == 1 else self.rank2
            if w.rank != expected:
                raise RankMismatchError(
                    f"factor-{factor} syllable has rank {w.rank}, expected {expected}")
            if prev == factor:
                raise ValueError("adjacent syllables share a factor")
            prev = factor

    def __len__(self) -> int:
        return sum(len(w) for _, w in self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "SyllableWord") -> "SyllableWord":
        return sp_multiply(self, other)

    def inverse(self) -> "SyllableWord":
        return sp_invert(self)

    def __str__(self) -> str:
        return syllable_str(self)

    def __repr__(self) -> str:
        return f"SyllableWord({self.rank1}, {self.rank2}, {syllable_str(self)!r})"


def sp_empty(rank1: int, rank2: int) -> SyllableWord:
    return SyllableWord(rank1, rank2)


def sp_reduce(rank1: int, rank2: int,
              raw: Iterable[tuple[int, Word]]) -> SyllableWord:
    """Merge adjacent same-factor syllables and drop the empty ones."""
    stack: list[tuple[int, Word]] = []
    for factor, w in raw:
        if w.is_identity:
            continue
        if stack and stack[-1][0] == factor:
            merged = stack.pop()[1] * w
            if not merged.is_identity:
                stack.append((factor, merged))
        else:
            stack.append((factor, w))
    return SyllableWord(rank1, rank2, tuple(stack))


def sp_from_word(rank1: int, rank2: int, factor: int, w: Word) -> SyllableWord:
    """Embed a single-factor word."""
    return sp_reduce(rank1, rank2, [(factor, w)])


def _check_same_ranks(words: Sequence[SyllableWord]) -> tuple[int, int]:
    ranks = {(w.rank1, w.rank2) for w in words}
    if len(ranks) > 1:
        raise RankMismatchError(f"mixed free-product ranks: {sorted(ranks)}")
    return words[0].rank1, words[0].rank2


def sp_multiply(*ws: SyllableWord) -> SyllableWord:
    rank1, rank2 = _check_same_ranks(ws)
    return sp_reduce(rank1, rank2,
                     itertools.chain.from_iterable(w.syllables for w in ws))


def sp_invert(w: SyllableWord) -> SyllableWord:
    return SyllableWord(
        w.rank1, w.rank2,
        tuple((f, s.inverse()) for f, s in reversed(w.syllables)))


def sp_commutator(x: SyllableWord, y: SyllableWord) -> SyllableWord:
    """[x, y] = x^-1 y^-1 x y."""
    return sp_multiply(sp_invert(x), sp_invert(y), x, y)


def sp_conjugate(w: SyllableWord, g: SyllableWord) -> SyllableWord:
    return sp_multiply(sp_invert(g), w, g)


def sp_pow(w: SyllableWord, k: int) -> SyllableWord:
    base = w if k >= 0 else sp_invert(w)
    out = sp_empty(w.rank1, w.rank2)
    for _ in range(abs(k)):
        out = sp_multiply(out, base)
    return out


def h_map(w: SyllableWord) -> tuple[Word, Word]:
    """Project onto F1 (+) F2: multiply out each factor's syllables in order."""
    p1 = Word(w.rank1)
    p2 = Word(w.rank2)
    for factor, s in w.syllables:
        if factor == 1:
            p1 = p1 * s
        else:
            p2 = p2 * s
    return p1, p2


# ---------------------------------------------------------------------------
# the quotient context


@dataclass(frozen=True)
class GContext:
    """The data defining G: two free factors and the commuting pair u1, u2."""

    rank1: int
    rank2: int
    u1: Word
    u2: Word
    _reps1: dict = field(default_factory=dict, compare=False, repr=False)
    _reps2: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.u1.rank != self.rank1 or self.u2.rank != self.rank2:
            raise RankMismatchError("u1/u2 ranks disagree with the declared factors")
        for name, u in (("u1", self.u1), ("u2", self.u2)):
            if u.is_identity:
                raise ValueError(f"{name} must be nonempty")
            _, exp = primitive_root(u)
            if exp != 1:
                raise ValueError(f"{name} is a proper power (exponent {exp})")

    def rep1(self, w: Word) -> Word:
        """Cached canonical representative of <u1> w."""
        hit = self._reps1.get(w)
        if hit is None:
            hit = coset_rep(self.u1, w)
            self._reps1[w] = hit
        return hit

    def rep2(self, w: Word) -> Word:
        hit = self._reps2.get(w)
        if hit is None:
            hit = coset_rep(self.u2, w)
            self._reps2[w] = hit
        return hit

    def empty(self) -> SyllableWord:
        return sp_empty(self.rank1, self.rank2)

    def embed(self, factor: int, w: Word) -> SyllableWord:
        return sp_from_word(self.rank1, self.rank2, factor, w)

    def relator(self) -> SyllableWord:
        return sp_commutator(self.embed(1, self.u1), self.embed(2, self.u2))

    def to_json_dict(self) -> dict:
        return {
            "rank1": self.rank1,
            "rank2": self.rank2,
            "u1": word_str(self.u1),
            "u2": word_str(self.u2),
        }


# ---------------------------------------------------------------------------
# the kernel of h and its commutator bases


def cartesian_basis_express(
        w: SyllableWord) -> tuple[tuple[tuple[Word, Word], int], ...]:
    """Express a kernel element as a product of commutators [v1, v2].

    Collection from the right: if the word ends ``... a c`` (a in F1, c in F2)
    it equals ``(... c a) [a, c]``; if it ends ``... c a`` it equals
    ``(... a c) [a, c]^-1``.  Swapping the tail merges it into the preceding
    syllable, so the syllable count strictly drops and the loop terminates.
    The returned factors multiply out to ``w`` exactly (in F1 * F2).
    """
    p1, p2 = h_map(w)
    if not (p1.is_identity and p2.is_identity):
        raise ValueError("word is not in the kernel of the direct-sum projection")

    syl = list(w.syllables)
    emitted: list[tuple[tuple[Word, Word], int]] = []
    while syl:
        assert len(syl) >= 4, "kernel elements have at least four syllables"
        (f_pen, pen), (f_last, last) = syl[-2], syl[-1]
        if f_pen == 1 and f_last == 2:
            emitted.append(((pen, last), 1))
        else:
            emitted.append(((last, pen), -1))
        swapped = syl[:-2] + [syl[-1], syl[-2]]
        syl = list(sp_reduce(w.rank1, w.rank2, swapped).syllables)
    return tuple(reversed(emitted))


def expand_basis_product(
        rank1: int, rank2: int,
        factors: Iterable[tuple[tuple[Word, Word], int]]) -> SyllableWord:
    """Multiply out a list of ((v1, v2), sign) commutator factors."""
    parts: list[tuple[int, Word]] = []
    for (v1, v2), sign in factors:
        if sign >= 0:
            parts.extend([(1, v1.inverse()), (2, v2.inverse()), (1, v1), (2, v2)])
        else:
            parts.extend([(2, v2.inverse()), (1, v1.inverse()), (2, v2), (1, v1)])
    return sp_reduce(rank1, rank2, parts)


@dataclass(frozen=True)
class KBasisSymbol:
    """A surviving basis commutator [v1, v2] of the kernel in G.

    Kind "A": v1 is the canonical representative of a nontrivial <u1>-coset
    and v2 is any nontrivial word; kind "B" is the mirror image.  A pair
    qualifying for both is classified "A".
    """

    v1: Word
    v2: Word
    kind: str


@dataclass(frozen=True)
class KWord:
    """A freely reduced word over kernel-basis symbols."""

    symbols: tuple[tuple[KBasisSymbol, int], ...] = ()

    def __post_init__(self) -> None:
        for (s, e), (t, f) in zip(self.symbols, self.symbols[1:]):
            if s == t and e == -f:
                raise ValueError("symbol word is not freely reduced")

    @property
    def is_identity(self) -> bool:
        return not self.symbols

    def __len__(self) -> int:
        return len(self.symbols)

    def inverse(self) -> "KWord":
        return KWord(tuple((s, -e) for s, e in reversed(self.symbols)))


def kword_reduce(items: Iterable[tuple[KBasisSymbol, int]]) -> KWord:
    stack: list[tuple[KBasisSymbol, int]] = []
    for sym, e in items:
        if stack and stack[-1][0] == sym and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((sym, e))
    return KWord(tuple(stack))


def kword_concat(*kws: KWord) -> KWord:
    return kword_reduce(
        itertools.chain.from_iterable(kw.symbols for kw in kws))


def classify_symbol(ctx: GContext, v1: Word, v2: Word) -> KBasisSymbol:
    """Classify [v1, v2] as a kind-A or kind-B basis symbol."""
    if v1.is_identity or v2.is_identity:
        raise ValueError("basis symbols need nontrivial components")
    if ctx.rep1(v1) == v1:
        return KBasisSymbol(v1, v2, "A")
    if ctx.rep2(v2) == v2:
        return KBasisSymbol(v1, v2, "B")
    raise ValueError(
        f"[{word_str(v1)}, {word_str(v2)}] is not a basis symbol in this context")


def rewrite_commutator(ctx: GContext, w1: Word, w2: Word) -> KWord:
    """Rewrite [w1, w2] into basis symbols:
    [w1, w2] = [w1, s2] [s2, s1] [s1, w2], s_i the coset representative of
    <u_i> w_i; factors with a trivial s-component vanish and are dropped."""
    if w1.is_identity or w2.is_identity:
        raise ValueError("rewrite needs nontrivial w1, w2")
    s1 = ctx.rep1(w1)
    s2 = ctx.rep2(w2)
    out: list[tuple[KBasisSymbol, int]] = []
    if not s2.is_identity:
        out.append((classify_symbol(ctx, w1, s2), 1))
    if not (s1.is_identity or s2.is_identity):
        out.append((classify_symbol(ctx, s1, s2), -1))  # [s2, s1] = [s1, s2]^-1
    if not s1.is_identity:
        out.append((classify_symbol(ctx, s1, w2), 1))
    return kword_reduce(out)


def kword_expand(kw: KWord, rank1: int, rank2: int) -> SyllableWord:
    """Multiply a symbol word back out to a syllable word."""
    return expand_basis_product(
        rank1, rank2, (((sym.v1, sym.v2), e) for sym, e in kw.symbols))


def k_image(ctx: GContext, w: SyllableWord) -> KWord:
    """The image of a kernel element in the surviving free basis of K.

    Empty iff ``w`` is trivial in G (completeness granted the freeness of K
    on the basis; emptiness certifying triviality needs only the rewriting
    identities, which hold in G unconditionally).
    """
    pieces = []
    for (v1, v2), sign in cartesian_basis_express(w):
        kw = rewrite_commutator(ctx, v1, v2)
        pieces.append(kw if sign >= 0 else kw.inverse())
    return kword_concat(*pieces)


def eq_in_G(ctx: GContext, x: SyllableWord, y: SyllableWord) -> bool:
    """Equality in G: equal direct-sum projections and trivial kernel part."""
    if (x.rank1, x.rank2) != (ctx.rank1, ctx.rank2) or \
       (y.rank1, y.rank2) != (ctx.rank1, ctx.rank2):
        raise RankMismatchError("syllable words do not match the context ranks")
    if h_map(x) != h_map(y):
        return False
    return k_image(ctx, sp_multiply(x, sp_invert(y))).is_identity


def is_trivial_in_G(ctx: GContext, w: SyllableWord) -> bool:
    return eq_in_G(ctx, w, ctx.empty())


# ---------------------------------------------------------------------------
# identity checks from the quotient analysis


def relation_check(ctx: GContext, w1: Word, w2: Word,
                   oracles: Sequence["FiniteQuotientOracle"] = ()) -> dict:
    """Certify [u1 w1, u2 w2] = [u1 w1, w2] [w2, w1] [w1, u2 w2] in G.

    Raises :class:`VerificationError` if the equality decision rejects the
    identity or any supplied oracle refutes it; returns a small report
    otherwise.
    """
    a = ctx.embed(1, ctx.u1 * w1)
    b = ctx.embed(2, ctx.u2 * w2)
    e1 = ctx.embed(1, w1)
    e2 = ctx.embed(2, w2)
    lhs = sp_commutator(a, b)
    rhs = sp_multiply(
        sp_commutator(a, e2),
        sp_commutator(e2, e1),
        sp_commutator(e1, b),
    )
    if not eq_in_G(ctx, lhs, rhs):
        raise VerificationError(
            f"imposed relation fails at w1={word_str(w1)}, w2={word_str(w2)}")
    for oracle in oracles:
        if oracle.apply(lhs) != oracle.apply(rhs):
            raise VerificationError(
                f"oracle (seed {oracle.seed}) refutes the imposed relation at "
                f"w1={word_str(w1)}, w2={word_str(w2)}")
    return {
        "w1": word_str(w1),
        "w2": word_str(w2),
        "holds": True,
        "oracles_checked": len(oracles),
    }


def conj_expansion_check(rank1: int, rank2: int, x1: Word, x2: Word,
                         factors: Sequence[tuple[tuple[Word, Word], int]],
                         n: int) -> bool:
    """Check the conjugation-expansion identity in F1 * F2 itself.

    x2^-n x1^-n (prod_j [c_j, d_j]^(d_j)) x1^n x2^n
      = prod_j ([x2^n, c_j x1^n] [c_j x1^n, d_j x2^n] [d_j x2^n, x1^n]
                [x1^n, x2^n])^(d_j)

    Both sides are expanded to syllable words and compared after free
    reduction, so no quotient relation is consulted.
    """
    if n < 0:
        raise ValueError("the conjugation depth n must be nonnegative")
    for (c, d), _ in factors:
        if c.is_identity or d.is_identity:
            raise ValueError("commutator factors need nontrivial components")
    a = x1 ** n
    b = x2 ** n
    sp_a = sp_from_word(rank1, rank2, 1, a)
    sp_b = sp_from_word(rank1, rank2, 2, b)
    middle = expand_basis_product(rank1, rank2, factors)
    lhs = sp_multiply(sp_invert(sp_b), sp_invert(sp_a), middle, sp_a, sp_b)

    rhs = sp_empty(rank1, rank2)
    for (c, d), delta in factors:
        ca = sp_from_word(rank1, rank2, 1, c * a)
        db = sp_from_word(rank1, rank2, 2, d * b)
        block = sp_multiply(
            sp_commutator(sp_b, ca),
            sp_commutator(ca, db),
            sp_commutator(db, sp_a),
            sp_commutator(sp_a, sp_b),
        )
        rhs = sp_multiply(rhs, block if delta >= 0 else sp_invert(block))
    return lhs == rhs


def conj_support_check(w: Word, g: Word) -> bool:
    """Generators of a cyclically reduced word survive in every conjugate."""
    if not is_cyclically_reduced(w):
        raise ValueError("w must be cyclically reduced")
    conj = g.inverse() * w * g
    return support(w) <= support(conj)


# ---------------------------------------------------------------------------
# finite-quotient refutation oracle


def _perm_identity(m: int) -> tuple[int, ...]:
    return tuple(range(m))


def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[i] for i in p)


def _perm_inv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _random_perm(rng: random.Random, m: int) -> tuple[int, ...]:
    items = list(range(m))
    rng.shuffle(items)
    return tuple(items)


def _eval_word_perms(images: Sequence[tuple[int, ...]], w: Word,
                     m: int) -> tuple[int, ...]:
    out = _perm_identity(m)
    for let in w.letters:
        p = images[abs(let) - 1]
        out = _perm_mul(out, p if let > 0 else _perm_inv(p))
    return out


@dataclass(frozen=True)
class FiniteQuotientOracle:
    """A seeded homomorphism G -> Sym(degree) used to refute equalities.

    Factor-one generators get uniform random permutations; factor-two
    generators are drawn from the centralizer of the image of u1 (rejection
    sampling over random permutations, with powers of that image as the
    guaranteed fallback), so the defining commutator always dies and words
    equal in G must have equal images.
    """

    degree: int
    seed: int
    images1: tuple[tuple[int, ...], ...]
    images2: tuple[tuple[int, ...], ...]
    resamples: int = 0

    @classmethod
    def build(cls, ctx: GContext, degree: int, seed: int,
              budget: int = 10_000, max_resamples: int = 8) -> "FiniteQuotientOracle":
        if degree < 2:
            raise ValueError("oracle degree must be at least 2")
        for attempt in range(max_resamples + 1):
            rng = random.Random(1_000_003 * seed + 7 * degree + attempt)
            images1 = tuple(_random_perm(rng, degree) for _ in range(ctx.rank1))
            center = _eval_word_perms(images1, ctx.u1, degree)
            images2 = []
            exhausted = False
            for _ in range(ctx.rank2):
                pick = None
                for _ in range(budget):
                    cand = _random_perm(rng, degree)
                    if _perm_mul(cand, center) == _perm_mul(center, cand):
                        pick = cand
                        break
                if pick is None:
                    exhausted = True
                    break
                images2.append(pick)
            if not exhausted:
                return cls(degree=degree, seed=seed, images1=images1,
                           images2=tuple(images2), resamples=attempt)
        # last resort: powers of the u1 image always centralize it
        rng = random.Random(1_000_003 * seed + 7 * degree)
        images1 = tuple(_random_perm(rng, degree) for _ in range(ctx.rank1))
        center = _eval_word_perms(images1, ctx.u1, degree)
        images2 = []
        for _ in range(ctx.rank2):
            p = _perm_identity(degree)
            for _ in range(rng.randrange(degree)):
                p = _perm_mul(p, center)
            images2.append(p)
        return cls(degree=degree, seed=seed, images1=images1,
                   images2=tuple(images2), resamples=max_resamples + 1)

    def apply(self, w: SyllableWord) -> tuple[int, ...]:
        out = _perm_identity(self.degree)
        for factor, s in w.syllables:
            images = self.images1 if factor == 1 else self.images2
            out = _perm_mul(out, _eval_word_perms(images, s, self.degree))
        return out

    def distinguishes(self, x: SyllableWord, y: SyllableWord) -> bool:
        return self.apply(x) != self.apply(y)


# ---------------------------------------------------------------------------
# enumeration, sampling, and the commutation scan


def _tagged_alphabet(rank1: int, rank2: int) -> list[tuple[int, int]]:
    # (factor, letter), ordered factor-1 first, then index, positive first
    out = []
    for factor, rank in ((1, rank1), (2, rank2)):
        for i in range(1, rank + 1):
            out.append((factor, i))
            out.append((factor, -i))
    return out


def _tags_to_syllables(rank1: int, rank2: int,
                       tags: Sequence[tuple[int, int]]) -> SyllableWord:
    parts = [(factor, Word(rank1 if factor == 1 else rank2, (let,)))
             for factor, let in tags]
    return sp_reduce(rank1, rank2, parts)


def enumerate_syllable_words(rank1: int, rank2: int,
                             max_len: int) -> Iterator[SyllableWord]:
    """All syllable words of total letter length <= max_len, graded, in a
    fixed lexicographic order on tagged letters."""
    alphabet = _tagged_alphabet(rank1, rank2)

    def exact(prefix: list[tuple[int, int]], remaining: int):
        if remaining == 0:
            yield tuple(prefix)
            return
        for tag in alphabet:
            if prefix:
                pf, pl = prefix[-1]
                if pf == tag[0] and pl == -tag[1]:
                    continue
            prefix.append(tag)
            yield from exact(prefix, remaining - 1)
            prefix.pop()

    for length in range(max_len + 1):
        for tags in exact([], length):
            yield _tags_to_syllables(rank1, rank2, tags)


def random_syllable_word(rng: random.Random, rank1: int, rank2: int,
                         max_len: int) -> SyllableWord:
    """Uniform length in [0, max_len], then a uniform admissible tagged letter
    at every position."""
    length = rng.randint(0, max_len)
    alphabet = _tagged_alphabet(rank1, rank2)
    tags: list[tuple[int, int]] = []
    for _ in range(length):
        if tags:
            pf, pl = tags[-1]
            choices = [t for t in alphabet if not (t[0] == pf and t[1] == -pl)]
        else:
            choices = alphabet
        tags.append(rng.choice(choices))
    return _tags_to_syllables(rank1, rank2, tags)


def random_kernel_word(rng: random.Random, rank1: int, rank2: int,
                       max_len: int) -> SyllableWord:
    """A random product of conjugated commutators: trivial projection by
    construction, total length capped by regeneration."""
    from .words import random_reduced_word

    while True:
        w = sp_empty(rank1, rank2)
        for _ in range(rng.randint(1, 3)):
            v1 = random_reduced_word(rng, rank1, rng.randint(1, 3))
            v2 = random_reduced_word(rng, rank2, rng.randint(1, 3))
            comm = sp_commutator(
                sp_from_word(rank1, rank2, 1, v1),
                sp_from_word(rank1, rank2, 2, v2))
            if rng.random() < 0.5:
                comm = sp_invert(comm)
            g = random_syllable_word(rng, rank1, rank2, 3)
            w = sp_multiply(w, sp_conjugate(comm, g))
        if len(w) <= max_len:
            return w


@dataclass(frozen=True)
class ScanReport:
    ctx: GContext
    max_len: int
    budget: int
    seed: int
    pairs_tested: int
    commuting_pairs_found: int
    counterexamples: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json_dict(self) -> dict:
        return {
            "ctx": self.ctx.to_json_dict(),
            "max_len": self.max_len,
            "budget": self.budget,
            "seed": self.seed,
            "pairs_tested": self.pairs_tested,
            "commuting_pairs_found": self.commuting_pairs_found,
            "counterexamples": list(self.counterexamples),
        }


def commutation_scan(ctx: GContext, max_len: int, budget: int,
                       seed: int) -> ScanReport:
    """Hunt for pairs x, y that commute with [x, y] but have [x, y] != 1.

    Exhausts all pairs with |x| + |y| <= max_len, then draws ``budget``
    seeded random pairs of length <= 2 * max_len each.  Any pair where both
    x and y commute with c = [x, y] must satisfy c = 1 in G; violations are
    collected as counterexamples (none are expected).
    """
    pairs_tested = 0
    commuting = 0
    counterexamples: list[dict] = []

    def consider(x: SyllableWord, y: SyllableWord) -> None:
        nonlocal pairs_tested, commuting
        pairs_tested += 1
        c = sp_commutator(x, y)
        if c.is_identity:
            commuting += 1
            return
        if not eq_in_G(ctx, sp_multiply(x, c), sp_multiply(c, x)):
            return
        if not eq_in_G(ctx, sp_multiply(y, c), sp_multiply(c, y)):
            return
        commuting += 1
        if not is_trivial_in_G(ctx, c):
            counterexamples.append(
                {"x": syllable_str(x), "y": syllable_str(y)})

    words = list(enumerate_syllable_words(ctx.rank1, ctx.rank2, max_len))
    for x in words:
        for y in words:
            if len(x) + len(y) <= max_len:
                consider(x, y)

    rng = random.Random(seed)
    for _ in range(budget):
        x = random_syllable_word(rng, ctx.rank1, ctx.rank2, 2 * max_len)
        y = random_syllable_word(rng, ctx.rank1, ctx.rank2, 2 * max_len)
        consider(x, y)

    return ScanReport(
        ctx=ctx, max_len=max_len, budget=budget, seed=seed,
        pairs_tested=pairs_tested, commuting_pairs_found=commuting,
        counterexamples=tuple(counterexamples))


# ---------------------------------------------------------------------------
# text form


_SUGAR = {
    "a": (1, 1), "b": (1, 2), "c": (2, 1), "d": (2, 2),
    "A": (1, -1), "B": (1, -2), "C": (2, -1), "D": (2, -2),
}


def parse_syllable_word(text: str, rank1: int, rank2: int) -> SyllableWord:
    """Parse the two-factor grammar.

    Tokens ``a<i>``/``A<i>`` are factor-one letters, ``b<i>``/``B<i>``
    factor-two letters; ``|`` separates syllables (and may appear between any
    two tokens).  The bare letters a, b / c, d (and their upper-case
    inverses) abbreviate the first two generators of factor one / factor two.
    The whole word ``e`` is the identity.
    """
    stripped = text.strip()
    if stripped == "e":
        return sp_empty(rank1, rank2)
    parts: list[tuple[int, Word]] = []
    for segment in stripped.split("|"):
        tokens = segment.split()
        if not tokens:
            raise ValueError("empty syllable segment")
        for tok in tokens:
            if tok in _SUGAR:
                factor, let = _SUGAR[tok]
            elif len(tok) >= 2 and tok[0] in "aAbB" and tok[1:].isdigit():
                index = int(tok[1:])
                if index == 0:
                    raise ValueError(f"bad letter index in token {tok!r}")
                factor = 1 if tok[0] in "aA" else 2
                let = index if tok[0].islower() else -index
            else:
                raise ValueError(f"bad free-product token {tok!r}")
            rank = rank1 if factor == 1 else rank2
            if abs(let) > rank:
                raise ValueError(
                    f"token {tok!r} outside factor-{factor} alphabet of rank {rank}")
            parts.append((factor, Word(rank, (let,))))
    return sp_reduce(rank1, rank2, parts)


def syllable_str(w: SyllableWord) -> str:
    """Inverse of :func:`parse_syllable_word`, one segment per syllable."""
    if w.is_identity:
        return "e"
    segments = []
    for factor, s in w.syllables:
        prefix = ("a", "A") if factor == 1 else ("b", "B")
        segments.append(" ".join(
            f"{prefix[0]}{let}" if let > 0 else f"{prefix[1]}{-let}"
            for let in s.letters))
    return " | ".join(segments)
