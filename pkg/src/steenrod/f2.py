"""Exact linear and polynomial algebra over the field with two elements.

Vectors and matrix rows are stored as Python int bitmasks, so addition is a
single XOR and Gaussian elimination runs at machine-word speed.  Polynomials
live in explicitly weighted polynomial rings and store their monomials as a
frozenset of exponent tuples; duplicate monomials cancel, which is mod-2
arithmetic for free.

Everything here is immutable after construction and every operation is pure,
so values may be shared freely between threads or processes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class F2Error(Exception):
    """Base class for errors raised by the exact-arithmetic layer."""


class ShapeError(F2Error):
    """Dimension mismatch between operands."""


class RingMismatchError(F2Error):
    """Operands belong to different polynomial rings."""


class DegreeCapError(F2Error):
    """A computation was asked to exceed its declared degree bound."""


# ---------------------------------------------------------------------------
# vectors and matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class F2Vector:
    """A vector over F2: ``length`` coordinates, ones at ``bits``."""

    length: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ShapeError(f"support exceeds length {self.length}")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "F2Vector":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise ShapeError(f"index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i in range(self.length) if (self.bits >> i) & 1)

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.length != other.length:
            raise ShapeError("vector lengths differ")
        return F2Vector(self.length, self.bits ^ other.bits)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def is_zero(self) -> bool:
        return self.bits == 0


class F2Matrix:
    """An immutable matrix over F2 with int-bitmask rows.

    Row ``i`` has bit ``j`` set iff entry ``(i, j)`` is 1.  Elimination always
    chooses the lowest-index pivot column first, so rank profiles, solutions
    and kernels are deterministic.
    """

    __slots__ = ("rows", "nrows", "ncols", "_echelon")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int]):
        if len(rows) != nrows:
            raise ShapeError("row count mismatch")
        for r in rows:
            if r < 0 or (ncols < r.bit_length()):
                raise ShapeError("row exceeds column count")
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_echelon", None)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("F2Matrix is immutable")

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        nrows = len(entries)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != ncols:
                raise ShapeError("ragged rows")
            bits = 0
            for j, v in enumerate(row):
                if v & 1:
                    bits |= 1 << j
            rows.append(bits)
        return cls(nrows, ncols, rows)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols, [0] * nrows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> F2Vector:
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return F2Vector(self.nrows, bits)

    def transpose(self) -> "F2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return F2Matrix(self.ncols, self.nrows, cols)

    def mat_vec(self, v: F2Vector) -> F2Vector:
        if v.length != self.ncols:
            raise ShapeError("matrix/vector shape mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if bin(r & v.bits).count("1") & 1:
                bits |= 1 << i
        return F2Vector(self.nrows, bits)

    def mat_mul(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ShapeError("matrix shapes incompatible")
        rows = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= other.rows[low.bit_length() - 1]
                rr ^= low
            rows.append(acc)
        return F2Matrix(self.nrows, other.ncols, rows)

    def stack(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.ncols:
            raise ShapeError("column counts differ")
        return F2Matrix(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def _reduced(self):
        """Row echelon data: (pivot column -> reduced row) in pivot order."""
        if self._echelon is not None:
            return self._echelon
        pivots: dict[int, int] = {}
        for row in self.rows:
            row = _reduce_against(row, pivots)
            if row:
                col = row.bit_length() - 1
                # keep fully reduced form: clear this column from earlier rows
                for c, r in list(pivots.items()):
                    if (r >> col) & 1:
                        pivots[c] = r ^ row
                pivots[col] = row
        object.__setattr__(self, "_echelon", pivots)
        return pivots

    def rank(self) -> int:
        return len(self._reduced())

    def solve(self, b: F2Vector) -> F2Vector | None:
        """Any x with Ax = b, or None when the system is inconsistent.

        Deterministic: elimination works on the augmented rows in order and
        free variables are set to zero.
        """
        if b.length != self.nrows:
            raise ShapeError("rhs length must equal row count")
        n = self.ncols
        mask = (1 << n) - 1
        # augmented rows: bit n holds b; pivots keyed by coefficient column
        pivots: dict[int, int] = {}
        for i, row in enumerate(self.rows):
            aug = row | (((b.bits >> i) & 1) << n)
            scan = aug & mask
            while scan:
                col = scan.bit_length() - 1
                p = pivots.get(col)
                if p is not None:
                    aug ^= p
                scan = aug & mask & ((1 << col) - 1)
            if aug & mask:
                col = (aug & mask).bit_length() - 1
                for c, r in list(pivots.items()):
                    if (r >> col) & 1:
                        pivots[c] = r ^ aug
                pivots[col] = aug
            elif aug:
                return None  # 0 = 1
        x = 0
        for col, row in pivots.items():
            if (row >> n) & 1:
                x |= 1 << col
        return F2Vector(n, x)

    def kernel_basis(self) -> list[F2Vector]:
        """Basis of the right kernel, deterministic ordering."""
        pivots = self._reduced()
        pivot_cols = sorted(pivots)
        free_cols = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free_cols:
            bits = 1 << f
            for c in pivot_cols:
                if (pivots[c] >> f) & 1:
                    bits |= 1 << c
            basis.append(F2Vector(self.ncols, bits))
        return basis

    def row_space_contains(self, v: F2Vector) -> bool:
        if v.length != self.ncols:
            raise ShapeError("length mismatch")
        pivots = self._reduced()
        return _reduce_against(v.bits, pivots) == 0

    def __eq__(self, other):
        return (
            isinstance(other, F2Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"F2Matrix({self.nrows}x{self.ncols})"


def _reduce_against(row: int, pivots: dict[int, int]) -> int:
    """Clear every pivot column appearing in the row."""
    scan = row
    while scan:
        col = scan.bit_length() - 1
        p = pivots.get(col)
        if p is not None:
            row ^= p
        scan = row & ((1 << col) - 1)
    return row


def solve_f2(matrix: F2Matrix, b: F2Vector) -> F2Vector | None:
    """Solve Ax = b over F2; None signals "no solution" (shape errors raise)."""
    return matrix.solve(b)


# ---------------------------------------------------------------------------
# weighted polynomial rings
# ---------------------------------------------------------------------------

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class WeightedPolyRing:
    """A polynomial ring over F2 with named generators of positive degree."""

    generators: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise F2Error("generator names must be unique")
        for n, d in self.generators:
            if d < 1:
                raise F2Error(f"generator {n} must have degree >= 1")

    @classmethod
    def make(cls, *gens: tuple[str, int]) -> "WeightedPolyRing":
        return cls(tuple(gens))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    def index_of(self, name: str) -> int:
        for i, (n, _) in enumerate(self.generators):
            if n == name:
                return i
        raise F2Error(f"unknown generator {name!r}")

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def monomials_of_degree(self, degree: int) -> Iterator[Monomial]:
        """All exponent tuples of the given weighted degree, lexicographic."""
        if degree < 0:
            return
        degs = self.degrees

        def rec(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == len(degs):
                if remaining == 0:
                    yield prefix
                return
            if i == len(degs) - 1:
                if remaining % degs[i] == 0:
                    yield prefix + (remaining // degs[i],)
                return
            for e in range(remaining // degs[i], -1, -1):
                yield from rec(i + 1, remaining - e * degs[i], prefix + (e,))

        yield from rec(0, degree, ())

    def slice_dimension(self, degree: int) -> int:
        return _slice_dim(self.degrees, degree)

    # -- polynomial constructors -------------------------------------------

    def zero(self) -> "F2Poly":
        return F2Poly(self, frozenset())

    def one(self) -> "F2Poly":
        return F2Poly(self, frozenset({(0,) * self.ngens}))

    def gen(self, name: str) -> "F2Poly":
        i = self.index_of(name)
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        return F2Poly(self, frozenset({mono}))

    def from_monomials(self, monos: Iterable[Monomial]) -> "F2Poly":
        acc: set[Monomial] = set()
        for m in monos:
            if len(m) != self.ngens:
                raise ShapeError("monomial length must equal generator count")
            acc.symmetric_difference_update({tuple(m)})
        return F2Poly(self, frozenset(acc))

    def parse(self, text: str) -> "F2Poly":
        return _parse_poly(self, text)


@lru_cache(maxsize=None)
def _slice_dim(degrees: tuple[int, ...], degree: int) -> int:
    if degree == 0:
        return 1
    if degree < 0:
        return 0
    if not degrees:
        return 0
    d = degrees[-1]
    rest = degrees[:-1]
    return sum(_slice_dim(rest, degree - k * d) for k in range(degree // d + 1))


_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?$")


def _parse_poly(ring: WeightedPolyRing, text: str) -> "F2Poly":
    text = text.strip()
    if not text:
        raise F2Error("empty polynomial expression")
    if text == "0":
        return ring.zero()
    monomials: set[Monomial] = set()
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise F2Error("empty term in polynomial expression")
        exps = [0] * ring.ngens
        for factor in term.split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise F2Error(f"cannot parse factor {factor!r}")
            idx = ring.index_of(m.group(1))
            exps[idx] += int(m.group(2)) if m.group(2) else 1
        monomials.symmetric_difference_update({tuple(exps)})
    return F2Poly(ring, frozenset(monomials))


@dataclass(frozen=True)
class F2Poly:
    """A polynomial over F2: a set of exponent tuples in a fixed ring."""

    ring: WeightedPolyRing
    monomials: frozenset[Monomial]

    def _check(self, other: "F2Poly"):
        if self.ring != other.ring:
            raise RingMismatchError("polynomials live in different rings")

    def __add__(self, other: "F2Poly") -> "F2Poly":
        self._check(other)
        return F2Poly(self.ring, self.monomials ^ other.monomials)

    def __mul__(self, other: "F2Poly") -> "F2Poly":
        self._check(other)
        acc: set[Monomial] = set()
        for a in self.monomials:
            for b in other.monomials:
                m = tuple(x + y for x, y in zip(a, b))
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
        return F2Poly(self.ring, frozenset(acc))

    def __pow__(self, e: int) -> "F2Poly":
        if e < 0:
            raise F2Error("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base.square()
            e >>= 1
        return result

    def square(self) -> "F2Poly":
        # Frobenius: squaring doubles every exponent, cross terms cancel.
        return F2Poly(self.ring, frozenset(tuple(2 * x for x in m) for m in self.monomials))

    def is_zero(self) -> bool:
        return not self.monomials

    def is_homogeneous(self) -> bool:
        degs = {self.ring.monomial_degree(m) for m in self.monomials}
        return len(degs) <= 1

    def degree(self) -> int:
        """Top weighted degree; zero polynomial has degree -1 by convention."""
        if not self.monomials:
            return -1
        return max(self.ring.monomial_degree(m) for m in self.monomials)

    def homogeneous_part(self, degree: int) -> "F2Poly":
        return F2Poly(
            self.ring,
            frozenset(m for m in self.monomials if self.ring.monomial_degree(m) == degree),
        )

    def homogeneous_parts(self) -> dict[int, "F2Poly"]:
        parts: dict[int, set[Monomial]] = {}
        for m in self.monomials:
            parts.setdefault(self.ring.monomial_degree(m), set()).add(m)
        return {d: F2Poly(self.ring, frozenset(s)) for d, s in sorted(parts.items())}

    def substitute(self, target_ring: WeightedPolyRing, images: Sequence["F2Poly"]) -> "F2Poly":
        """Ring-hom evaluation sending generator i to images[i]."""
        if len(images) != self.ring.ngens:
            raise ShapeError("need one image per generator")
        acc = target_ring.zero()
        cache: dict[tuple[int, int], F2Poly] = {}

        def power(i: int, e: int) -> F2Poly:
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        for m in self.monomials:
            term = target_ring.one()
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def coefficient(self, mono: Monomial) -> int:
        return 1 if tuple(mono) in self.monomials else 0

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        names = [n for n, _ in self.ring.generators]
        terms = []
        for m in sorted(self.monomials, reverse=True):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            terms.append("*".join(factors) if factors else "1")
        return " + ".join(terms)

    def __repr__(self):
        return f"F2Poly({self})"


# ---------------------------------------------------------------------------
# Poincare series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoincareSeries:
    """Truncated dimension series: coefficients[d] = dim in degree d."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise F2Error("series needs at least the degree-0 coefficient")
        if any(c < 0 for c in self.coefficients):
            raise F2Error("series coefficients must be non-negative")

    @property
    def max_degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, d: int) -> int:
        if d > self.max_degree:
            raise DegreeCapError(f"series truncated at degree {self.max_degree}")
        return self.coefficients[d] if d >= 0 else 0

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        n = min(self.max_degree, other.max_degree)
        return PoincareSeries(tuple(self[d] + other[d] for d in range(n + 1)))

    def __mul__(self, other: "PoincareSeries") -> "PoincareSeries":
        n = min(self.max_degree, other.max_degree)
        coeffs = [
            sum(self[i] * other[d - i] for i in range(d + 1)) for d in range(n + 1)
        ]
        return PoincareSeries(tuple(coeffs))

    def truncate(self, max_degree: int) -> "PoincareSeries":
        if max_degree > self.max_degree:
            raise DegreeCapError(f"series truncated at degree {self.max_degree}")
        return PoincareSeries(self.coefficients[: max_degree + 1])


def series_of_ring(ring: WeightedPolyRing, max_degree: int) -> PoincareSeries:
    """Monomial counts of the ring by weighted degree, up to max_degree.

    Equivalent to expanding prod_i 1/(1 - x^(deg g_i)) through max_degree.
    """
    if max_degree < 0:
        raise DegreeCapError("max_degree must be >= 0")
    coeffs = [1] + [0] * max_degree
    for d in ring.degrees:
        for n in range(d, max_degree + 1):
            coeffs[n] += coeffs[n - d]
    return PoincareSeries(tuple(coeffs))


def geometric_series_product(part_degrees: Sequence[int], max_degree: int) -> PoincareSeries:
    """Expansion of prod 1/(1-x^d) for the given degrees, through max_degree."""
    ring = WeightedPolyRing(tuple((f"g{i}", d) for i, d in enumerate(part_degrees)))
    return series_of_ring(ring, max_degree)
