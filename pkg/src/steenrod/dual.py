"""The Milnor dual of the mod-2 Steenrod algebra.

The dual is the polynomial ring F2[xi_1, xi_2, ...] with deg xi_n = 2^n - 1.
A monomial is stored as its exponent tuple (j_1, ..., j_r) with trailing
zeros stripped.  The coproduct is the algebra map determined by

    mu*(xi_n) = sum_{i=0..n} xi_{n-i}^(2^i) (x) xi_i,

and the conjugates zeta_n = chi(xi_n) satisfy the recursion
zeta_n = xi_n + sum_{i=1..n-1} xi_i^(2^(n-i)) zeta_{n-i}.

The pairing against the admissible basis peels the highest generator off a
monomial and pairs it against componentwise splittings of the word; the base
case <xi_n, Sq^I> reads off the coefficient of Sq^(2^(n-1), ..., 2, 1) after
Adem normalization.  Ordering both bases right-lexicographically makes the
degreewise pairing matrix unitriangular, which is what funds conversion
between the admissible and Milnor bases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .algebra import (
    SteenrodElement,
    Word,
    admissible_basis,
    normalize_word,
    word_sort_key,
)
from .f2 import F2Matrix, F2Vector

XiMonomial = tuple[int, ...]


def _strip(mono: Iterable[int]) -> XiMonomial:
    t = tuple(mono)
    while t and t[-1] == 0:
        t = t[:-1]
    return t


def xi_degree(mono: XiMonomial) -> int:
    return sum(j * ((1 << (k + 1)) - 1) for k, j in enumerate(mono))


def xi_sort_key(mono: XiMonomial):
    """Same right-lexicographic order as for admissible words."""
    return (len(mono), tuple(reversed(mono)))


@lru_cache(maxsize=None)
def xi_monomials(degree: int) -> tuple[XiMonomial, ...]:
    """All exponent tuples of the given degree, canonically ordered."""
    if degree < 0:
        return ()
    if degree == 0:
        return ((),)

    def rec(remaining: int, maxgen: int) -> Iterator[XiMonomial]:
        # monomials in xi_1..xi_maxgen of total degree `remaining`
        if remaining == 0:
            yield ()
            return
        if maxgen == 0:
            return
        d = (1 << maxgen) - 1
        for mult in range(remaining // d + 1):
            for rest in rec(remaining - mult * d, maxgen - 1):
                yield rest + (0,) * (maxgen - 1 - len(rest)) + (mult,) if mult else rest

    top = 1
    while (1 << (top + 1)) - 1 <= degree:
        top += 1
    monos = {_strip(m) for m in rec(degree, top)}
    return tuple(sorted(monos, key=xi_sort_key))


@dataclass(frozen=True)
class DualElement:
    """An F2-sum of xi-monomials."""

    monomials: frozenset[XiMonomial]

    @classmethod
    def zero(cls) -> "DualElement":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "DualElement":
        return cls(frozenset({()}))

    @classmethod
    def xi(cls, n: int, power: int = 1) -> "DualElement":
        if n < 0:
            raise ValueError("xi index must be >= 0")
        if n == 0:
            return cls.one()
        return cls(frozenset({_strip((0,) * (n - 1) + (power,))}))

    @classmethod
    def from_monomials(cls, monos: Iterable[Iterable[int]]) -> "DualElement":
        acc: set[XiMonomial] = set()
        for m in monos:
            m = _strip(m)
            if m in acc:
                acc.discard(m)
            else:
                acc.add(m)
        return cls(frozenset(acc))

    def __add__(self, other: "DualElement") -> "DualElement":
        return DualElement(self.monomials ^ other.monomials)

    def __mul__(self, other: "DualElement") -> "DualElement":
        acc: set[XiMonomial] = set()
        for a in self.monomials:
            for b in other.monomials:
                long, short = (a, b) if len(a) >= len(b) else (b, a)
                m = tuple(
                    x + (short[i] if i < len(short) else 0)
                    for i, x in enumerate(long)
                )
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
        return DualElement(frozenset(acc))

    def __pow__(self, e: int) -> "DualElement":
        result = DualElement.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = DualElement(
                frozenset(tuple(2 * x for x in m) for m in base.monomials)
            )
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.monomials

    def is_homogeneous(self) -> bool:
        return len({xi_degree(m) for m in self.monomials}) <= 1

    def degree(self) -> int:
        degs = {xi_degree(m) for m in self.monomials}
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for m in sorted(self.monomials, key=xi_sort_key):
            parts.append("1" if not m else "xi[" + ",".join(map(str, m)) + "]")
        return " + ".join(parts)

    def __repr__(self):
        return f"DualElement({self})"


# ---------------------------------------------------------------------------
# coproduct and conjugates
# ---------------------------------------------------------------------------

DualPair = tuple[XiMonomial, XiMonomial]


@dataclass(frozen=True)
class DualTensor:
    """An F2-sum of xi-monomial tensors."""

    pairs: frozenset[DualPair]

    @classmethod
    def zero(cls) -> "DualTensor":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "DualTensor":
        return cls(frozenset({((), ())}))

    def __add__(self, other: "DualTensor") -> "DualTensor":
        return DualTensor(self.pairs ^ other.pairs)

    def __mul__(self, other: "DualTensor") -> "DualTensor":
        acc: set[DualPair] = set()
        for (a, b) in self.pairs:
            ea = DualElement(frozenset({a}))
            eb = DualElement(frozenset({b}))
            for (c, d) in other.pairs:
                left = ea * DualElement(frozenset({c}))
                right = eb * DualElement(frozenset({d}))
                for lm in left.monomials:
                    for rm in right.monomials:
                        p = (lm, rm)
                        if p in acc:
                            acc.discard(p)
                        else:
                            acc.add(p)
        return DualTensor(frozenset(acc))

    def square(self) -> "DualTensor":
        return DualTensor(
            frozenset(
                (tuple(2 * x for x in a), tuple(2 * x for x in b))
                for (a, b) in self.pairs
            )
        )

    def __pow__(self, e: int) -> "DualTensor":
        result = DualTensor.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base.square()
            e >>= 1
        return result


@lru_cache(maxsize=None)
def _xi_coproduct(n: int) -> DualTensor:
    pairs = set()
    for i in range(n + 1):
        left = DualElement.xi(n - i) ** (1 << i)
        right = DualElement.xi(i)
        lm = next(iter(left.monomials))
        rm = next(iter(right.monomials))
        pairs.add((lm, rm))
    return DualTensor(frozenset(pairs))


@lru_cache(maxsize=None)
def _monomial_coproduct(mono: XiMonomial) -> DualTensor:
    result = DualTensor.one()
    for k, j in enumerate(mono):
        if j:
            result = result * (_xi_coproduct(k + 1) ** j)
    return result


def dual_coproduct(x: DualElement) -> DualTensor:
    """Algebra-map extension of mu* to arbitrary dual elements."""
    acc = DualTensor.zero()
    for m in x.monomials:
        acc = acc + _monomial_coproduct(m)
    return acc


@lru_cache(maxsize=None)
def zeta(n: int) -> DualElement:
    """Conjugate zeta_n = chi(xi_n) expanded in the xi basis."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return DualElement.one()
    acc = DualElement.xi(n)
    for i in range(1, n):
        acc = acc + (DualElement.xi(i) ** (1 << (n - i))) * zeta(n - i)
    return acc


# ---------------------------------------------------------------------------
# the pairing
# ---------------------------------------------------------------------------


def _milnor_weight_word(n: int) -> Word:
    """The admissible word (2^(n-1), ..., 4, 2, 1) dual to xi_n."""
    return tuple(1 << k for k in range(n - 1, -1, -1))


@lru_cache(maxsize=None)
def _pair_xi_word(n: int, word: Word) -> int:
    """<xi_n, Sq^word> = coefficient of the weight word after normalization."""
    if n == 0:
        return 1 if () in normalize_word(word) else 0
    return 1 if _milnor_weight_word(n) in normalize_word(word) else 0


def _splits_of_degree(word: Word, target: int) -> Iterator[tuple[Word, Word]]:
    """Componentwise splittings (J1, J2) of word with deg(J2) = target."""
    if not word:
        if target == 0:
            yield ((), ())
        return
    head, tail = word[0], word[1:]
    for b in range(min(head, target) + 1):
        a = head - b
        for left, right in _splits_of_degree(tail, target - b):
            yield ((a,) + left if a else left, (b,) + right if b else right)


@lru_cache(maxsize=None)
def _pair_mono_word(mono: XiMonomial, word: Word) -> int:
    if xi_degree(mono) != sum(word):
        return 0
    if not mono:
        return 1 if () in normalize_word(word) else 0
    n = len(mono)  # highest generator appearing
    if sum(1 for j in mono if j) == 1 and mono[-1] == 1:
        return _pair_xi_word(n, word)
    peeled = _strip(mono[:-1] + (mono[-1] - 1,))
    total = 0
    for left, right in _splits_of_degree(word, (1 << n) - 1):
        if _pair_xi_word(n, right):
            total ^= _pair_mono_word(peeled, left)
    return total


def pair(d: DualElement, s: SteenrodElement | Word) -> int:
    """The Kronecker pairing <A_*, A> -> F2, bilinear in both slots."""
    words: Iterable[Word]
    if isinstance(s, SteenrodElement):
        words = s.words
    else:
        words = [tuple(s)]
    total = 0
    for m in d.monomials:
        for w in words:
            total ^= _pair_mono_word(m, w)
    return total


def pair_tensor(t: DualTensor, a: SteenrodElement, b: SteenrodElement) -> int:
    """<t, a (x) b> with the componentwise pairing."""
    total = 0
    for (lm, rm) in t.pairs:
        total ^= pair(DualElement(frozenset({lm})), a) & pair(
            DualElement(frozenset({rm})), b
        )
    return total


# ---------------------------------------------------------------------------
# Milnor basis conversion
# ---------------------------------------------------------------------------

MilnorSeq = tuple[int, ...]


def milnor_degree(seq: MilnorSeq) -> int:
    return xi_degree(_strip(seq))


@lru_cache(maxsize=None)
def pairing_matrix(degree: int) -> tuple[tuple[XiMonomial, ...], tuple[Word, ...], F2Matrix]:
    """Rows: xi-monomials, columns: admissible words, both sigma-ordered."""
    monos = xi_monomials(degree)
    words = admissible_basis(degree)
    rows = []
    for m in monos:
        bits = 0
        for j, w in enumerate(words):
            if _pair_mono_word(m, w):
                bits |= 1 << j
        rows.append(bits)
    return monos, words, F2Matrix(len(monos), len(words), rows)


def milnor_to_admissible(seq: Iterable[int]) -> SteenrodElement:
    """The element Sq(e_1, ..., e_r) expanded in the admissible basis."""
    seq = _strip(seq)
    degree = xi_degree(seq)
    monos, words, matrix = pairing_matrix(degree)
    target = F2Vector.from_support(len(monos), [monos.index(seq)])
    coeffs = matrix.solve(target)
    if coeffs is None:  # pairing matrix is always invertible
        raise ArithmeticError(f"singular pairing matrix in degree {degree}")
    return SteenrodElement(
        frozenset(words[j] for j in range(len(words)) if coeffs[j])
    )


def admissible_to_milnor(x: SteenrodElement) -> frozenset[MilnorSeq]:
    """Coefficients of x in the Milnor basis: {E : <xi^E, x> = 1}."""
    acc: set[MilnorSeq] = set()
    for w in x.words:
        degree = sum(w)
        monos, words, matrix = pairing_matrix(degree)
        j = words.index(w)
        for i, m in enumerate(monos):
            if matrix.entry(i, j):
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
    return frozenset(acc)


@lru_cache(maxsize=None)
def milnor_primitive(i: int) -> SteenrodElement:
    """Q_i = Sq(0, ..., 0, 1), the primitive dual to xi_{i+1}."""
    return milnor_to_admissible((0,) * i + (1,))


# ---------------------------------------------------------------------------
# sub-Hopf algebras and dual quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubHopfAlgebra:
    """A(n) is generated by Sq^1..Sq^(2^n); E(n) is exterior on Q_0..Q_n."""

    kind: str  # "A" or "E"
    n: int

    def __post_init__(self):
        if self.kind not in ("A", "E"):
            raise ValueError("kind must be 'A' or 'E'")
        if self.n < 0:
            raise ValueError("n must be >= 0")

    def __str__(self):
        return f"{self.kind}({self.n})"


def _span_closure(generators: list[SteenrodElement]) -> list[SteenrodElement]:
    """Smallest unital subalgebra span containing the generators.

    Works degreewise with elimination; only safe for finite subalgebras.
    """
    basis_elts: list[SteenrodElement] = [SteenrodElement.one()]
    frontier = list(basis_elts)
    # word index for coordinates
    word_index: dict[Word, int] = {}

    def coords(e: SteenrodElement) -> int:
        bits = 0
        for w in e.words:
            if w not in word_index:
                word_index[w] = len(word_index)
            bits |= 1 << word_index[w]
        return bits

    pivots: dict[int, int] = {}

    def add_to_span(e: SteenrodElement) -> bool:
        row = coords(e)
        scan = row
        while scan:
            col = scan.bit_length() - 1
            p = pivots.get(col)
            if p is not None:
                row ^= p
            scan = row & ((1 << col) - 1)
        if row == 0:
            return False
        pivots[row.bit_length() - 1] = row
        return True

    add_to_span(SteenrodElement.one())
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in generators:
                prod = g * e
                if not prod.is_zero() and add_to_span(prod):
                    basis_elts.append(prod)
                    new_frontier.append(prod)
        frontier = new_frontier
    return basis_elts


@lru_cache(maxsize=None)
def subalgebra_basis(kind: str, n: int) -> tuple[SteenrodElement, ...]:
    """Explicit basis of A(n) (n <= 1) or E(n) (n <= 2), degree-sorted."""
    h = SubHopfAlgebra(kind, n)
    if h.kind == "A":
        if h.n > 1:
            raise ValueError("A(n) only supported for n <= 1")
        gens = [SteenrodElement.sq(1 << k) for k in range(h.n + 1)]
        elts = _span_closure(gens)
    else:
        if h.n > 2:
            raise ValueError("E(n) only supported for n <= 2")
        qs = [milnor_primitive(i) for i in range(h.n + 1)]
        elts = [SteenrodElement.one()]
        for size in range(1, h.n + 2):
            for combo in _ordered_subsets(h.n + 1, size):
                prod = SteenrodElement.one()
                for i in combo:
                    prod = prod * qs[i]
                elts.append(prod)
    return tuple(
        sorted(elts, key=lambda e: (e.degree(), [word_sort_key(w) for w in e.sorted_words()]))
    )


def _ordered_subsets(n: int, size: int):
    import itertools

    return itertools.combinations(range(n), size)


def basis_of(h: SubHopfAlgebra) -> tuple[SteenrodElement, ...]:
    return subalgebra_basis(h.kind, h.n)


def dual_quotient_generators(h: SubHopfAlgebra, max_degree: int) -> list[DualElement]:
    """Generators of the quotient ring dual to A//h, truncated by degree.

    For A(n): xi_k^(2^(n+2-k)) for 1 <= k <= n+1, then xi_k for k >= n+2.
    For E(n): xi_k^2 for 1 <= k <= n+1, then xi_k for k >= n+2.
    """
    gens: list[DualElement] = []
    k = 1
    while True:
        if k <= h.n + 1:
            power = (1 << (h.n + 2 - k)) if h.kind == "A" else 2
        else:
            power = 1
        degree = power * ((1 << k) - 1)
        if degree > max_degree:
            if power == 1:
                break
            k += 1
            continue
        gens.append(DualElement.xi(k) ** power)
        k += 1
    return gens


def verify_cotensor_member(x: DualElement, h: SubHopfAlgebra) -> bool:
    """Whether x is annihilated by the coaction along h, i.e. whether
    (pi_h (x) 1) Delta(x) = 1 (x) x.

    Equivalently: for every positive-degree basis element b of h, the sum of
    right factors of Delta(x) whose left factor pairs with b vanishes.
    """
    if not x.is_homogeneous():
        raise ValueError("cotensor membership needs a homogeneous element")
    delta = dual_coproduct(x)
    for b in basis_of(h):
        if b.counit():
            continue
        bdeg = b.degree()
        acc: set[XiMonomial] = set()
        for (left, right) in delta.pairs:
            if xi_degree(left) != bdeg:
                continue
            if pair(DualElement(frozenset({left})), b):
                if right in acc:
                    acc.discard(right)
                else:
                    acc.add(right)
        if acc:
            return False
    return True


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_XI_RE = re.compile(r"^xi\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]$")
_ZETA_RE = re.compile(r"^zeta\[\s*(\d+)\s*\]$")


def parse_dual(text: str) -> DualElement:
    """Parse `xi[j1,j2,...]` and `zeta[n]` joined by `+` and `*`."""
    text = text.strip()
    if not text:
        raise ValueError("empty dual expression")
    if text == "0":
        return DualElement.zero()
    total = DualElement.zero()
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError("empty term in dual expression")
        prod = DualElement.one()
        for factor in term.split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            m = _XI_RE.match(factor)
            if m:
                inner = m.group(1).strip()
                exps = tuple(int(v) for v in inner.split(",")) if inner else ()
                prod = prod * DualElement.from_monomials([exps])
                continue
            m = _ZETA_RE.match(factor)
            if m:
                prod = prod * zeta(int(m.group(1)))
                continue
            raise ValueError(f"cannot parse {factor!r}")
        total = total + prod
    return total


_SQM_RE = re.compile(r"^SqM\(\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\)$")
_Q_RE = re.compile(r"^Q([0-2])$")


def parse_milnor_operator(text: str) -> SteenrodElement:
    """Parse `SqM(e1,...,er)` and `Q0`/`Q1`/`Q2` into admissible form."""
    text = text.strip()
    m = _SQM_RE.match(text)
    if m:
        inner = m.group(1).strip()
        seq = tuple(int(v) for v in inner.split(",")) if inner else ()
        return milnor_to_admissible(seq)
    m = _Q_RE.match(text)
    if m:
        return milnor_primitive(int(m.group(1)))
    raise ValueError(f"cannot parse Milnor operator {text!r}")
