"""The mod-2 Steenrod algebra in the Serre-Cartan (admissible) basis.

Elements are F2-sums of words Sq^{i_1}...Sq^{i_r}; a word is admissible when
i_j >= 2 i_{j+1} throughout.  The Adem relation

    Sq^m Sq^n = sum_{0 <= i <= m/2} C(n-i-1, m-2i) Sq^{m+n-i} Sq^i   (m < 2n)

rewrites the leftmost inadmissible pair until every term is admissible; the
rewriting terminates and the normal form is independent of strategy (which
the test suite checks on randomized words).

The coproduct, the antipode chi, and basis enumeration by degree live here
too.  The canonical order on words is lexicographic from the right with
longer words larger, matching the order used for the Milnor pairing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

Word = tuple[int, ...]


def binom_mod2(a: int, b: int) -> int:
    """C(a, b) mod 2 by Lucas: 1 iff the bits of b sit inside the bits of a."""
    if b < 0 or b > a:
        return 0
    return 1 if (a & b) == b else 0


def word_degree(word: Word) -> int:
    return sum(word)


def is_admissible(word: Word) -> bool:
    return all(word[j] >= 2 * word[j + 1] for j in range(len(word) - 1))


def word_sort_key(word: Word) -> tuple[int, Word]:
    """Right-lexicographic order: longer words are larger, then compare from
    the rightmost entry leftward."""
    return (len(word), tuple(reversed(word)))


def _adem_pair(m: int, n: int) -> frozenset[Word]:
    """Right side of the Adem relation for an inadmissible pair (m, n)."""
    terms: set[Word] = set()
    for i in range(m // 2 + 1):
        if binom_mod2(n - i - 1, m - 2 * i):
            word = (m + n - i, i) if i > 0 else (m + n,)
            terms.symmetric_difference_update({word})
    return frozenset(terms)


@lru_cache(maxsize=None)
def normalize_word(word: Word) -> frozenset[Word]:
    """Admissible normal form of a word as a set of admissible words.

    Strategy: rewrite the leftmost inadmissible adjacent pair and recurse.
    The cache is idempotent, so concurrent readers are safe.
    """
    for entry in word:
        if entry < 0:
            raise ValueError("Sq exponents must be non-negative")
    word = tuple(e for e in word if e != 0)  # Sq^0 = 1
    for j in range(len(word) - 1):
        if word[j] < 2 * word[j + 1]:
            result: set[Word] = set()
            for repl in _adem_pair(word[j], word[j + 1]):
                rewritten = word[:j] + repl + word[j + 2 :]
                result.symmetric_difference_update(normalize_word(rewritten))
            return frozenset(result)
    return frozenset({word})


@dataclass(frozen=True)
class SteenrodElement:
    """An F2-sum of admissible words; the empty word is the unit 1."""

    words: frozenset[Word]

    @classmethod
    def zero(cls) -> "SteenrodElement":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "SteenrodElement":
        return cls(frozenset({()}))

    @classmethod
    def sq(cls, *exponents: int) -> "SteenrodElement":
        """The element Sq^{i_1}...Sq^{i_r}, normalized."""
        return cls(normalize_word(tuple(exponents)))

    @classmethod
    def from_words(cls, words: Iterable[Word]) -> "SteenrodElement":
        acc: set[Word] = set()
        for w in words:
            acc.symmetric_difference_update(normalize_word(tuple(w)))
        return cls(frozenset(acc))

    def __post_init__(self):
        for w in self.words:
            if not is_admissible(w):
                raise ValueError(f"non-admissible word {w} in SteenrodElement")

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        return SteenrodElement(self.words ^ other.words)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        acc: set[Word] = set()
        for a in self.words:
            for b in other.words:
                acc.symmetric_difference_update(normalize_word(a + b))
        return SteenrodElement(frozenset(acc))

    def is_zero(self) -> bool:
        return not self.words

    def is_homogeneous(self) -> bool:
        return len({word_degree(w) for w in self.words}) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous element; -1 for zero."""
        degs = {word_degree(w) for w in self.words}
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def homogeneous_part(self, degree: int) -> "SteenrodElement":
        return SteenrodElement(
            frozenset(w for w in self.words if word_degree(w) == degree)
        )

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=word_sort_key)

    def coproduct(self) -> "TensorElement":
        acc: set[tuple[Word, Word]] = set()
        for w in self.words:
            acc.symmetric_difference_update(coproduct_word(w))
        return TensorElement(frozenset(acc))

    def antipode(self) -> "SteenrodElement":
        acc: set[Word] = set()
        for w in self.words:
            acc.symmetric_difference_update(_antipode_word(w))
        return SteenrodElement(frozenset(acc))

    def counit(self) -> int:
        return 1 if () in self.words else 0

    def to_json(self) -> list[list[int]]:
        return [list(w) for w in self.sorted_words()]

    def __str__(self) -> str:
        if not self.words:
            return "0"
        parts = []
        for w in self.sorted_words():
            parts.append("1" if not w else "Sq[" + ",".join(map(str, w)) + "]")
        return " + ".join(parts)

    def __repr__(self):
        return f"SteenrodElement({self})"


@dataclass(frozen=True)
class TensorElement:
    """An F2-sum of two-sided tensors of admissible words."""

    pairs: frozenset[tuple[Word, Word]]

    @classmethod
    def zero(cls) -> "TensorElement":
        return cls(frozenset())

    def __add__(self, other: "TensorElement") -> "TensorElement":
        return TensorElement(self.pairs ^ other.pairs)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        acc: set[tuple[Word, Word]] = set()
        for (a, b) in self.pairs:
            for (c, d) in other.pairs:
                left = normalize_word(a + c)
                right = normalize_word(b + d)
                for lw in left:
                    for rw in right:
                        pair = (lw, rw)
                        if pair in acc:
                            acc.discard(pair)
                        else:
                            acc.add(pair)
        return TensorElement(frozenset(acc))

    def is_zero(self) -> bool:
        return not self.pairs

    def apply_left(self, f) -> "TensorElement":
        """Apply a word -> SteenrodElement map to the left factors."""
        acc: set[tuple[Word, Word]] = set()
        for (a, b) in self.pairs:
            for w in f(a).words:
                pair = (w, b)
                if pair in acc:
                    acc.discard(pair)
                else:
                    acc.add(pair)
        return TensorElement(frozenset(acc))

    def multiply_out(self) -> SteenrodElement:
        """Image under the product map a (x) b -> ab."""
        acc: set[Word] = set()
        for (a, b) in self.pairs:
            acc.symmetric_difference_update(normalize_word(a + b))
        return SteenrodElement(frozenset(acc))

    def __str__(self):
        if not self.pairs:
            return "0"

        def side(w: Word) -> str:
            return "1" if not w else "Sq[" + ",".join(map(str, w)) + "]"

        ordered = sorted(self.pairs, key=lambda p: (word_sort_key(p[0]), word_sort_key(p[1])))
        return " + ".join(f"{side(a)} (x) {side(b)}" for a, b in ordered)


def _raw_splits(word: Word) -> Iterator[tuple[Word, Word]]:
    """Componentwise splittings of a word, zero entries dropped.

    For Sq^I the coproduct is sum over I1 + I2 = I (entrywise) of
    Sq^I1 (x) Sq^I2; neither side need be admissible.
    """
    if not word:
        yield ((), ())
        return
    head, tail = word[0], word[1:]
    for left, right in _raw_splits(tail):
        for a in range(head + 1):
            b = head - a
            yield ((a,) + left if a else left, (b,) + right if b else right)


@lru_cache(maxsize=None)
def coproduct_word(word: Word) -> frozenset[tuple[Word, Word]]:
    acc: set[tuple[Word, Word]] = set()
    for l_raw, r_raw in _raw_splits(word):
        for lw in normalize_word(l_raw):
            for rw in normalize_word(r_raw):
                pair = (lw, rw)
                if pair in acc:
                    acc.discard(pair)
                else:
                    acc.add(pair)
    return frozenset(acc)


@lru_cache(maxsize=None)
def _antipode_word(word: Word) -> frozenset[Word]:
    """chi on an admissible word via the connected-Hopf recursion.

    From sum chi(x') x'' = 0 in positive degrees: the (x, 1) term contributes
    chi(x) itself, every other term has a strictly lower-degree left factor.
    """
    if not word:
        return frozenset({()})
    acc: set[Word] = set()
    for l_raw, r_raw in _raw_splits(word):
        if word_degree(l_raw) == word_degree(word):
            continue  # the chi(x)*1 term being solved for
        for lw in normalize_word(l_raw):
            for chi_lw in _antipode_word(lw):
                acc.symmetric_difference_update(normalize_word(chi_lw + r_raw))
    return frozenset(acc)


@lru_cache(maxsize=None)
def admissible_basis(degree: int) -> tuple[Word, ...]:
    """All admissible words of the given degree, in canonical order."""
    if degree < 0:
        return ()
    if degree == 0:
        return ((),)
    words = []
    for first in range(degree, 0, -1):
        for tail in admissible_basis(degree - first):
            if not tail or first >= 2 * tail[0]:
                words.append((first,) + tail)
    return tuple(sorted(words, key=word_sort_key))


def basis(degree: int) -> list[SteenrodElement]:
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return [SteenrodElement(frozenset({w})) for w in admissible_basis(degree)]


def dim(degree: int) -> int:
    return len(admissible_basis(degree))


# ---------------------------------------------------------------------------
# generation by the classes Sq^(2^k)
# ---------------------------------------------------------------------------


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@lru_cache(maxsize=None)
def express_in_two_power_generators(n: int) -> frozenset[tuple[int, ...]]:
    """Sq^n as a mod-2 sum of products of the generators Sq^(2^k).

    Each returned tuple lists 2-power exponents left to right, so
    (1, 2) means Sq^1 Sq^2.  Built by the descent

        Sq^n = Sq^(n-2^k) Sq^(2^k)
               + sum_{c>0} C(2^k-c-1, n-2^k-2c) Sq^(n-c) Sq^c

    with 2^k the largest power of two below n; both factors of every
    correction term have smaller index, so the recursion terminates.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if _is_power_of_two(n):
        return frozenset({(n,)})
    b = 1 << (n.bit_length() - 1)
    a = n - b
    acc: set[tuple[int, ...]] = set()

    def accumulate_product(left: int, right: int):
        for lw in express_in_two_power_generators(left):
            for rw in express_in_two_power_generators(right):
                word = lw + rw
                if word in acc:
                    acc.discard(word)
                else:
                    acc.add(word)

    accumulate_product(a, b)
    for c in range(1, (n - 1) // 2 + 1):
        if n - c >= 1 and binom_mod2(b - c - 1, a - 2 * c):
            accumulate_product(n - c, c)
    return frozenset(acc)


def two_power_expression_value(expr: frozenset[tuple[int, ...]]) -> SteenrodElement:
    """Multiply out a 2-power product expression and normalize."""
    acc: set[Word] = set()
    for product in expr:
        acc.symmetric_difference_update(normalize_word(product))
    return SteenrodElement(frozenset(acc))


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_SQ_RE = re.compile(r"^Sq\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]$")


def parse_element(text: str) -> SteenrodElement:
    """Parse `Sq[i1,i2,...]` words joined by `+` and `*`; `1` is the unit."""
    text = text.strip()
    if not text:
        raise ValueError("empty Steenrod expression")
    if text == "0":
        return SteenrodElement.zero()
    total = SteenrodElement.zero()
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError("empty term in Steenrod expression")
        factor_elt = SteenrodElement.one()
        for factor in term.split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            m = _SQ_RE.match(factor)
            if not m:
                raise ValueError(f"cannot parse {factor!r}")
            inner = m.group(1).strip()
            exponents = tuple(int(x) for x in inner.split(",")) if inner else ()
            factor_elt = factor_elt * SteenrodElement.sq(*exponents)
        total = total + factor_elt
    return total
