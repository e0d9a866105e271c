"""Finite graded modules over A(1) and E(1).

A(1) is generated by Sq^1 and Sq^2; E(1) is exterior on Q_0 = Sq^1 and
Q_1 = Sq^3 + Sq^2 Sq^1.  A module is a degree window, a dimension per degree,
and one matrix per algebra generator between adjacent slices.  The module
relations (Sq^1 Sq^1 = 0 and Sq^2 Sq^2 = Sq^1 Sq^2 Sq^1, respectively
Q_i^2 = 0 and Q_0 Q_1 = Q_1 Q_0) are validated wherever the composites stay
inside the window.

The standard small pieces are built mechanically inside the ambient Steenrod
algebra rather than hard-coded:

    Z2                        one class
    A(1), E(1)                the free rank-one modules
    I, L                      augmentation ideals
    J = A(1)/A(1)Sq^3         the joker
    K = A(1)/A(1)(Sq^1, Sq^2 Sq^3)
    C = E(1)/E(1)Sq^1

Stable-type identification equates the dimension series and both Margolis
homology series of a module with a non-negative combination of catalog
pieces, then certifies a unique counting solution by constructing an actual
isomorphism piece by piece (images of piece generators are searched in
canonical order and every candidate map is verified to commute with the
action before it is accepted).

Modules coming from a polynomial-ring presentation are window truncations of
something infinite, so every Margolis or type conclusion within 3 degrees of
the top of the window is flagged provisional; Q_1 moves degrees by 3 and
truncation corrupts exactly that fringe.  Freeness detection via vanishing
Margolis homology (Adams-Margolis) is a standard fact the solver relies on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .action import SqAlgebraPresentation
from .algebra import SteenrodElement
from .dual import SubHopfAlgebra, basis_of, milnor_primitive
from .f2 import F2Matrix, F2Vector, F2Poly

EDGE_MARGIN = 3  # Q_1 has degree 3; conclusions this close to the top are provisional

ALGEBRA_OPS = {
    "A1": (("sq1", 1), ("sq2", 2)),
    "E1": (("q0", 1), ("q1", 3)),
}


class ModuleError(Exception):
    pass


@dataclass(frozen=True)
class FiniteModule:
    """A degree-windowed module over A(1) or E(1)."""

    algebra: str
    dmin: int
    dims: tuple[int, ...]
    ops: tuple[tuple[str, tuple[F2Matrix, ...]], ...]
    truncated: bool = False
    name: str = ""

    def __post_init__(self):
        if self.algebra not in ALGEBRA_OPS:
            raise ModuleError(f"unknown algebra {self.algebra!r}")
        expected = tuple(op for op, _ in ALGEBRA_OPS[self.algebra])
        if tuple(op for op, _ in self.ops) != expected:
            raise ModuleError(f"{self.algebra} needs ops {expected}")
        for (op, mats), (_, shift) in zip(self.ops, ALGEBRA_OPS[self.algebra]):
            if len(mats) != len(self.dims):
                raise ModuleError(f"{op}: need one matrix per degree")
            for i, m in enumerate(mats):
                if m.ncols != self.dims[i]:
                    raise ModuleError(f"{op} at degree {self.dmin + i}: bad source dim")
                target = self.dim(self.dmin + i + shift)
                if m.nrows != target and not (self.truncated and self._near_top(i + shift)):
                    raise ModuleError(f"{op} at degree {self.dmin + i}: bad target dim")

    def _near_top(self, offset: int) -> bool:
        return offset >= len(self.dims)

    # -- shape ----------------------------------------------------------------

    @property
    def dmax(self) -> int:
        return self.dmin + len(self.dims) - 1

    def dim(self, degree: int) -> int:
        i = degree - self.dmin
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    def total_dim(self) -> int:
        return sum(self.dims)

    def op_matrix(self, op: str, degree: int) -> F2Matrix:
        shift = dict(ALGEBRA_OPS[self.algebra])[op]
        i = degree - self.dmin
        if 0 <= i < len(self.dims):
            return dict(self.ops)[op][i]
        return F2Matrix.zero(self.dim(degree + shift), self.dim(degree))

    def poincare(self) -> tuple[int, ...]:
        return self.dims

    def reliable_max(self) -> int:
        return self.dmax - EDGE_MARGIN if self.truncated else self.dmax

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def build(algebra, dmin, dims, mats_by_op, truncated=False, name=""):
        ops = tuple((op, tuple(mats_by_op[op])) for op, _ in ALGEBRA_OPS[algebra])
        return FiniteModule(algebra, dmin, tuple(dims), ops, truncated, name)

    def suspend(self, s: int) -> "FiniteModule":
        label = self.name if not s else f"{self.name}@{s}" if self.name else ""
        return FiniteModule(self.algebra, self.dmin + s, self.dims, self.ops, self.truncated, label)

    def direct_sum(self, other: "FiniteModule") -> "FiniteModule":
        if self.algebra != other.algebra:
            raise ModuleError("cannot sum modules over different algebras")
        dmin = min(self.dmin, other.dmin)
        dmax = max(self.dmax, other.dmax)
        dims = tuple(self.dim(d) + other.dim(d) for d in range(dmin, dmax + 1))
        mats_by_op = {}
        for op, shift in ALGEBRA_OPS[self.algebra]:
            mats = []
            for d in range(dmin, dmax + 1):
                a = self.op_matrix(op, d)
                b = other.op_matrix(op, d)
                rows = [r for r in a.rows] + [r << a.ncols for r in b.rows]
                mats.append(F2Matrix(a.nrows + b.nrows, a.ncols + b.ncols, rows))
            mats_by_op[op] = mats
        return FiniteModule.build(
            self.algebra, dmin, dims, mats_by_op,
            truncated=self.truncated or other.truncated,
        )

    # -- relations --------------------------------------------------------------

    def validate(self) -> None:
        """Check the defining relations wherever composites stay in window."""
        top = self.dmax if not self.truncated else self.dmax - 4
        for d in range(self.dmin, top + 1):
            if self.algebra == "A1":
                sq1, sq2 = (lambda deg: self.op_matrix("sq1", deg)), (
                    lambda deg: self.op_matrix("sq2", deg)
                )
                if any(sq1(d + 1).mat_mul(sq1(d)).rows):
                    raise ModuleError(f"Sq^1 Sq^1 != 0 at degree {d}")
                lhs = sq2(d + 2).mat_mul(sq2(d))
                rhs = sq1(d + 3).mat_mul(sq2(d + 1)).mat_mul(sq1(d))
                if lhs != rhs:
                    raise ModuleError(f"Sq^2 Sq^2 != Sq^1 Sq^2 Sq^1 at degree {d}")
            else:
                q0, q1 = (lambda deg: self.op_matrix("q0", deg)), (
                    lambda deg: self.op_matrix("q1", deg)
                )
                if any(q0(d + 1).mat_mul(q0(d)).rows):
                    raise ModuleError(f"Q_0^2 != 0 at degree {d}")
                if any(q1(d + 3).mat_mul(q1(d)).rows):
                    raise ModuleError(f"Q_1^2 != 0 at degree {d}")
                lhs = q1(d + 1).mat_mul(q0(d))
                rhs = q0(d + 3).mat_mul(q1(d))
                if lhs != rhs:
                    raise ModuleError(f"Q_0 Q_1 != Q_1 Q_0 at degree {d}")

    # -- Margolis homology --------------------------------------------------------

    def margolis_operator(self, which: str) -> tuple[int, dict[int, F2Matrix]]:
        """The differential (Q_0 or Q_1) as matrices, with its degree shift."""
        if self.algebra == "E1":
            op = {"q0": "q0", "q1": "q1"}[which]
            shift = dict(ALGEBRA_OPS["E1"])[op]
            return shift, {d: self.op_matrix(op, d) for d in range(self.dmin, self.dmax + 1)}
        if which == "q0":
            return 1, {d: self.op_matrix("sq1", d) for d in range(self.dmin, self.dmax + 1)}
        # Q_1 = Sq^1 Sq^2 + Sq^2 Sq^1 on an A(1)-module
        mats = {}
        for d in range(self.dmin, self.dmax + 1):
            a = self.op_matrix("sq1", d + 2).mat_mul(self.op_matrix("sq2", d))
            b = self.op_matrix("sq2", d + 1).mat_mul(self.op_matrix("sq1", d))
            rows = [x ^ y for x, y in zip(a.rows, b.rows)]
            mats[d] = F2Matrix(a.nrows, a.ncols, rows)
        return 3, mats

    def margolis_homology(self, which: str) -> dict[int, tuple[int, bool]]:
        """Degree -> (dim ker/im, reliable flag)."""
        if which not in ("q0", "q1"):
            raise ModuleError("which must be 'q0' or 'q1'")
        shift, mats = self.margolis_operator(which)
        out = {}
        for d in range(self.dmin, self.dmax + 1):
            ker = self.dim(d) - mats[d].rank()
            im = mats[d - shift].rank() if d - shift >= self.dmin else 0
            reliable = d <= self.reliable_max()
            out[d] = (ker - im, reliable)
        return out

    def margolis_series(self, which: str) -> tuple[int, ...]:
        h = self.margolis_homology(which)
        return tuple(h[d][0] for d in range(self.dmin, self.dmax + 1))

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> str:
        data = {
            "algebra": self.algebra,
            "dmin": self.dmin,
            "dims": list(self.dims),
            "truncated": self.truncated,
            "ops": {
                op: [
                    [[i, j] for i in range(m.nrows) for j in range(m.ncols) if m.entry(i, j)]
                    for m in mats
                ]
                for op, mats in self.ops
            },
        }
        return json.dumps(data, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FiniteModule":
        data = json.loads(text)
        dims = data["dims"]
        dmin = data["dmin"]
        algebra = data["algebra"]
        mats_by_op = {}
        for op, shift in ALGEBRA_OPS[algebra]:
            mats = []
            for idx, entries in enumerate(data["ops"][op]):
                d = dmin + idx
                tgt = dims[d + shift - dmin] if 0 <= d + shift - dmin < len(dims) else 0
                rows = [0] * tgt
                for i, j in entries:
                    rows[i] |= 1 << j
                mats.append(F2Matrix(tgt, dims[idx], rows))
            mats_by_op[op] = mats
        return cls.build(algebra, dmin, dims, mats_by_op, truncated=data["truncated"])

    def to_dot(self) -> str:
        """Node-and-edge picture: nodes per basis element, short edges for the
        degree-1 operator, long edges for the other one."""
        lines = ["digraph module {", "  rankdir=BT;"]
        for d in range(self.dmin, self.dmax + 1):
            for i in range(self.dim(d)):
                lines.append(f'  "n{d}_{i}" [label="{d}"];')
        styles = {1: "solid", 2: "dashed", 3: "dashed"}
        for op, shift in ALGEBRA_OPS[self.algebra]:
            for d in range(self.dmin, self.dmax + 1):
                m = self.op_matrix(op, d)
                for j in range(m.ncols):
                    for i in range(m.nrows):
                        if m.entry(i, j):
                            lines.append(
                                f'  "n{d}_{j}" -> "n{d + shift}_{i}"'
                                f' [style={styles[shift]}, label="{op}"];'
                            )
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# building modules inside the ambient Steenrod algebra
# ---------------------------------------------------------------------------


def _word_coords(elements: Sequence[SteenrodElement]):
    """Coordinate bitmasks of Steenrod elements in their joint word support."""
    words = sorted({w for e in elements for w in e.words})
    index = {w: i for i, w in enumerate(words)}
    vecs = []
    for e in elements:
        bits = 0
        for w in e.words:
            bits |= 1 << index[w]
        vecs.append(bits)
    return index, vecs


def _module_from_subquotient(
    algebra: str,
    carrier: Sequence[SteenrodElement],
    ideal: Sequence[SteenrodElement] = (),
    name: str = "",
) -> FiniteModule:
    """Left module on span(carrier)/span(ideal) inside the Steenrod algebra.

    The carrier must be closed under the algebra action modulo the ideal, and
    the ideal must be a submodule of the carrier span.
    """
    if algebra == "A1":
        acts = [("sq1", SteenrodElement.sq(1)), ("sq2", SteenrodElement.sq(2))]
    else:
        acts = [("q0", milnor_primitive(0)), ("q1", milnor_primitive(1))]

    by_degree: dict[int, list[SteenrodElement]] = {}
    for e in carrier:
        by_degree.setdefault(e.degree(), []).append(e)
    ideal_by_degree: dict[int, list[SteenrodElement]] = {}
    for e in ideal:
        ideal_by_degree.setdefault(e.degree(), []).append(e)

    if not by_degree:
        return zero_module(algebra)
    dmin, dmax = min(by_degree), max(by_degree)

    # per degree: choose quotient representatives (carrier vectors independent
    # of the ideal span), remembering coordinates for later solves
    reps: dict[int, list[SteenrodElement]] = {}
    for d in range(dmin, dmax + 1):
        elems = by_degree.get(d, [])
        ideal_elems = ideal_by_degree.get(d, [])
        index, vecs = _word_coords(elems + ideal_elems)
        pivots: dict[int, int] = {}

        def reduce(row):
            scan = row
            while scan:
                col = scan.bit_length() - 1
                p = pivots.get(col)
                if p is not None:
                    row ^= p
                scan = row & ((1 << col) - 1)
            return row

        for v in vecs[len(elems):]:
            r = reduce(v)
            if r:
                pivots[r.bit_length() - 1] = r
        chosen = []
        for e, v in zip(elems, vecs):
            r = reduce(v)
            if r:
                pivots[r.bit_length() - 1] = r
                chosen.append(e)
        reps[d] = chosen

    dims = [len(reps.get(d, [])) for d in range(dmin, dmax + 1)]

    def express(x: SteenrodElement, d: int) -> int:
        """Coordinates of x in reps[d] modulo the ideal; raises if outside."""
        basis_elems = reps.get(d, [])
        ideal_elems = ideal_by_degree.get(d, [])
        pool = list(basis_elems) + list(ideal_elems)
        index, vecs = _word_coords(pool + [x])
        n = len(pool)
        rows = [0] * len(index)
        for j, v in enumerate(vecs[:n]):
            for bit in range(len(index)):
                if (v >> bit) & 1:
                    rows[bit] |= 1 << j
        mat = F2Matrix(len(index), n, rows)
        target = F2Vector(len(index), vecs[n])
        sol = mat.solve(target)
        if sol is None:
            raise ModuleError("carrier is not closed under the action")
        return sol.bits & ((1 << len(basis_elems)) - 1)

    mats_by_op = {}
    for op, act in acts:
        shift = act.degree()
        mats = []
        for d in range(dmin, dmax + 1):
            src = reps.get(d, [])
            tgt = reps.get(d + shift, [])
            rows = [0] * len(tgt)
            for j, e in enumerate(src):
                coords = express(act * e, d + shift)
                for i in range(len(tgt)):
                    if (coords >> i) & 1:
                        rows[i] |= 1 << j
            mats.append(F2Matrix(len(tgt), len(src), rows))
        mats_by_op[op] = mats

    mod = _trim(FiniteModule.build(algebra, dmin, dims, mats_by_op, name=name))
    mod.validate()
    return mod


def _trim(m: FiniteModule) -> FiniteModule:
    """Drop zero-dimensional slices at both ends of the window."""
    lo, hi = m.dmin, m.dmax
    while lo <= hi and m.dim(lo) == 0:
        lo += 1
    while hi >= lo and m.dim(hi) == 0:
        hi -= 1
    if lo > hi:
        return zero_module(m.algebra)
    if (lo, hi) == (m.dmin, m.dmax):
        return m
    dims = tuple(m.dim(d) for d in range(lo, hi + 1))
    mats_by_op = {
        op: [m.op_matrix(op, d) for d in range(lo, hi + 1)]
        for op, _ in ALGEBRA_OPS[m.algebra]
    }
    return FiniteModule.build(m.algebra, lo, dims, mats_by_op, m.truncated, m.name)


def zero_module(algebra: str) -> FiniteModule:
    return FiniteModule.build(
        algebra, 0, (0,), {op: [F2Matrix.zero(0, 0)] for op, _ in ALGEBRA_OPS[algebra]},
        name="0",
    )


def _left_ideal_span(generators: list[SteenrodElement], ambient: Sequence[SteenrodElement]) -> list[SteenrodElement]:
    """Elements a*g for a in the ambient basis, g a generator (left ideal span)."""
    out = []
    for g in generators:
        for a in ambient:
            x = a * g
            if not x.is_zero():
                out.append(x)
    return out


@lru_cache(maxsize=None)
def standard_piece(algebra: str, family: str) -> FiniteModule:
    """The catalog modules, built from their definitions in the ambient algebra.

    A(1) catalog: Z2, I (augmentation ideal), J (the joker), K, A1.
    E(1) catalog: Z2, L (augmentation ideal), C = E(1)/E(1)Sq^1, E1.
    """
    if algebra == "A1":
        amb = list(basis_of(SubHopfAlgebra("A", 1)))
        if family == "Z2":
            positive = [e for e in amb if e.degree() > 0]
            return _module_from_subquotient("A1", amb, positive, name="Z2")
        if family == "A1":
            return _module_from_subquotient("A1", amb, name="A1")
        if family == "I":
            return _module_from_subquotient(
                "A1", [e for e in amb if e.degree() > 0], name="I"
            )
        if family == "J":
            ideal = _left_ideal_span([SteenrodElement.sq(3)], amb)
            return _module_from_subquotient("A1", amb, ideal, name="J")
        if family == "K":
            ideal = _left_ideal_span(
                [SteenrodElement.sq(1), SteenrodElement.sq(2) * SteenrodElement.sq(3)], amb
            )
            return _module_from_subquotient("A1", amb, ideal, name="K")
    else:
        amb = list(basis_of(SubHopfAlgebra("E", 1)))
        if family == "Z2":
            positive = [e for e in amb if e.degree() > 0]
            return _module_from_subquotient("E1", amb, positive, name="Z2")
        if family == "E1":
            return _module_from_subquotient("E1", amb, name="E1")
        if family == "L":
            return _module_from_subquotient(
                "E1", [e for e in amb if e.degree() > 0], name="L"
            )
        if family == "C":
            ideal = _left_ideal_span([milnor_primitive(0)], amb)
            return _module_from_subquotient("E1", amb, ideal, name="C")
    raise ModuleError(f"unknown piece {family!r} over {algebra}")


def catalog(algebra: str) -> tuple[str, ...]:
    return ("Z2", "I", "J", "K", "A1") if algebra == "A1" else ("Z2", "L", "C", "E1")


# ---------------------------------------------------------------------------
# modules from ring presentations
# ---------------------------------------------------------------------------


def from_presentation(
    pres: SqAlgebraPresentation, algebra: str, window: tuple[int, int]
) -> FiniteModule:
    """Monomial-basis module of a presented ring, restricted to a window.

    Action matrices are exact (computed in the ring, beyond the window if
    needed) but slices above the window are discarded, so the result is
    truncated and the top EDGE_MARGIN degrees are treated as provisional.
    """
    dmin, dmax = window
    if dmin < 0 or dmax < dmin:
        raise ModuleError("bad window")
    monos = {d: list(pres.ring.monomials_of_degree(d)) for d in range(dmin, dmax + 1)}
    index = {d: {m: i for i, m in enumerate(ms)} for d, ms in monos.items()}
    dims = [len(monos[d]) for d in range(dmin, dmax + 1)]

    def poly_coords(f: F2Poly, d: int) -> int:
        bits = 0
        for m in f.monomials:
            if pres.ring.monomial_degree(m) != d:
                raise ModuleError("inhomogeneous action image")
            bits |= 1 << index[d][m]
        return bits

    if algebra == "A1":
        actions = {"sq1": (1, pres.q0), "sq2": (2, lambda f: pres.sq(2, f))}
    else:
        actions = {"q0": (1, pres.q0), "q1": (3, pres.q1)}

    mats_by_op = {}
    for op, (shift, fn) in actions.items():
        mats = []
        for d in range(dmin, dmax + 1):
            src = monos[d]
            tgt_dim = len(monos.get(d + shift, ())) if d + shift <= dmax else 0
            rows = [0] * tgt_dim
            if d + shift <= dmax:
                for j, m in enumerate(src):
                    img = fn(F2Poly(pres.ring, frozenset({m})))
                    bits = poly_coords(img, d + shift)
                    for i in range(tgt_dim):
                        if (bits >> i) & 1:
                            rows[i] |= 1 << j
            mats.append(F2Matrix(tgt_dim, len(src), rows))
        mats_by_op[op] = mats

    mod = FiniteModule.build(algebra, dmin, dims, mats_by_op, truncated=True)
    return mod


def restrict_to_e1(m: FiniteModule) -> FiniteModule:
    """Restriction of scalars along E(1) -> A(1): Q_0 = Sq^1 and
    Q_1 = Sq^1 Sq^2 + Sq^2 Sq^1 on the same underlying graded space."""
    if m.algebra != "A1":
        raise ModuleError("can only restrict an A(1)-module")
    _, q1_mats = m.margolis_operator("q1")
    mats_by_op = {
        "q0": [m.op_matrix("sq1", d) for d in range(m.dmin, m.dmax + 1)],
        "q1": [q1_mats[d] for d in range(m.dmin, m.dmax + 1)],
    }
    out = FiniteModule.build(
        "E1", m.dmin, m.dims, mats_by_op, truncated=m.truncated, name=m.name
    )
    if not m.truncated:
        out.validate()
    return out


# ---------------------------------------------------------------------------
# module maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    """A degreewise linear map commuting with the algebra action."""

    source: FiniteModule
    target: FiniteModule
    mats: tuple[F2Matrix, ...]  # indexed from source.dmin

    def __post_init__(self):
        if self.source.algebra != self.target.algebra:
            raise ModuleError("source and target algebras differ")
        if len(self.mats) != len(self.source.dims):
            raise ModuleError("need one matrix per source degree")
        for i, m in enumerate(self.mats):
            d = self.source.dmin + i
            if m.ncols != self.source.dim(d) or m.nrows != self.target.dim(d):
                raise ModuleError(f"matrix shape mismatch at degree {d}")

    def mat(self, degree: int) -> F2Matrix:
        i = degree - self.source.dmin
        if 0 <= i < len(self.mats):
            return self.mats[i]
        return F2Matrix.zero(self.target.dim(degree), self.source.dim(degree))

    def check_commutes(self, top: int | None = None) -> bool:
        top = self.source.reliable_max() if top is None else top
        for op, shift in ALGEBRA_OPS[self.source.algebra]:
            for d in range(self.source.dmin, top - shift + 1):
                lhs = self.mat(d + shift).mat_mul(self.source.op_matrix(op, d))
                rhs = self.target.op_matrix(op, d).mat_mul(self.mat(d))
                if lhs != rhs:
                    return False
        return True

    def is_injective(self) -> bool:
        return all(
            self.mat(d).rank() == self.source.dim(d)
            for d in range(self.source.dmin, self.source.dmax + 1)
        )

    def is_bijective(self) -> bool:
        return self.is_injective() and all(
            self.source.dim(d) == self.target.dim(d)
            for d in range(
                min(self.source.dmin, self.target.dmin),
                max(self.source.dmax, self.target.dmax) + 1,
            )
        )

    def margolis_induced_injective(self, which: str) -> tuple[bool, int | None]:
        """Whether H(source; Q) -> H(target; Q) is injective; witness degree
        of the first failure otherwise."""
        _, mats_s = self.source.margolis_operator(which)
        shift, mats_t = self.target.margolis_operator(which)
        top = min(self.source.reliable_max(), self.target.reliable_max())
        for d in range(self.source.dmin, top + 1):
            ker = mats_s[d].kernel_basis()
            if not ker:
                continue
            pivots: dict[int, int] = {}

            def reduce(row):
                scan = row
                while scan:
                    col = scan.bit_length() - 1
                    p = pivots.get(col)
                    if p is not None:
                        row ^= p
                    scan = row & ((1 << col) - 1)
                return row

            # span of the target differential's image
            if d - shift >= self.target.dmin:
                mt = mats_t.get(d - shift)
                if mt is not None:
                    for r in mt.transpose().rows:
                        rr = reduce(r)
                        if rr:
                            pivots[rr.bit_length() - 1] = rr
            # the induced map is injective iff the images of the source
            # kernel span hdim_source new directions modulo that image
            hdim_source = self.source.margolis_homology(which)[d][0]
            survivors = 0
            for v in ker:
                rr = reduce(self.mat(d).mat_vec(v).bits)
                if rr:
                    pivots[rr.bit_length() - 1] = rr
                    survivors += 1
            if survivors < hdim_source:
                return False, d
        return True, None


def identity_map(m: FiniteModule) -> ModuleMap:
    return ModuleMap(
        m, m, tuple(F2Matrix.identity(m.dim(d)) for d in range(m.dmin, m.dmax + 1))
    )


def zero_map(source: FiniteModule, target: FiniteModule) -> ModuleMap:
    return ModuleMap(
        source,
        target,
        tuple(
            F2Matrix.zero(target.dim(d), source.dim(d))
            for d in range(source.dmin, source.dmax + 1)
        ),
    )


# ---------------------------------------------------------------------------
# stable-type identification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StableType:
    """Result of decomposing a module into catalog pieces."""

    status: str  # unique | ambiguous | infeasible | unverified
    solutions: tuple[tuple[tuple[str, int], ...], ...]
    iso: ModuleMap | None = None
    note: str = ""

    @property
    def pieces(self) -> tuple[tuple[str, int], ...]:
        if self.status != "unique":
            raise ModuleError(f"stable type is {self.status}, not unique")
        return self.solutions[0]


def _piece_profile(algebra: str, family: str, susp: int, lo: int, hi: int):
    """(poincare, q0m, q1m) of a suspended piece restricted to [lo, hi]."""
    t = standard_piece(algebra, family).suspend(susp)
    poin = tuple(t.dim(d) for d in range(lo, hi + 1))
    q0 = t.margolis_homology("q0")
    q1 = t.margolis_homology("q1")
    q0m = tuple(q0.get(d, (0, True))[0] for d in range(lo, hi + 1))
    q1m = tuple(q1.get(d, (0, True))[0] for d in range(lo, hi + 1))
    return poin, q0m, q1m


def stable_type_solve(
    module: FiniteModule,
    pieces: Sequence[str] | None = None,
    max_solutions: int = 4,
    build_iso: bool = True,
) -> StableType:
    """Identify a module as a multiset of suspended catalog pieces.

    Equates the dimension series and both Margolis series over the reliable
    window by bounded exhaustive search; a unique counting solution is then
    certified with an explicit isomorphism.
    """
    algebra = module.algebra
    names = tuple(pieces) if pieces is not None else catalog(algebra)
    lo, hi = module.dmin, module.reliable_max()
    if hi < lo:
        raise ModuleError("window too small to say anything reliable")
    target = (
        tuple(module.dim(d) for d in range(lo, hi + 1)),
        tuple(module.margolis_homology("q0")[d][0] for d in range(lo, hi + 1)),
        tuple(module.margolis_homology("q1")[d][0] for d in range(lo, hi + 1)),
    )

    bottoms = {name: standard_piece(algebra, name).dmin for name in names}
    profile_cache: dict[tuple[str, int], tuple] = {}

    def profile(name, susp):
        key = (name, susp)
        if key not in profile_cache:
            profile_cache[key] = _piece_profile(algebra, name, susp, lo, hi)
        return profile_cache[key]

    solutions: set[tuple[tuple[str, int], ...]] = set()

    def search(state, placed):
        if len(solutions) >= max_solutions:
            return
        poin, q0m, q1m = state
        first = None
        for i in range(len(poin)):
            if poin[i] or q0m[i] or q1m[i]:
                first = i
                break
        if first is None:
            solutions.add(tuple(sorted(placed)))
            return
        if poin[first] == 0:
            return  # margolis left over with no dimensions: infeasible branch
        d = lo + first
        for name in names:
            susp = d - bottoms[name]
            p_poin, p_q0, p_q1 = profile(name, susp)
            new_poin = tuple(a - b for a, b in zip(poin, p_poin))
            new_q0 = tuple(a - b for a, b in zip(q0m, p_q0))
            new_q1 = tuple(a - b for a, b in zip(q1m, p_q1))
            if min(new_poin) < 0 or min(new_q0) < 0 or min(new_q1) < 0:
                continue
            search((new_poin, new_q0, new_q1), placed + [(name, susp)])

    search(target, [])

    if not solutions:
        return StableType("infeasible", (), note="not expressible in catalog")
    ordered = tuple(sorted(solutions))
    if len(ordered) > 1:
        return StableType("ambiguous", ordered)
    sol = ordered[0]
    if not build_iso:
        return StableType("unique", ordered)
    iso = _build_isomorphism(module, sol)
    if iso is None:
        return StableType(
            "unverified", ordered, note="counting solution found but no explicit isomorphism"
        )
    return StableType("unique", ordered, iso=iso)


# -- explicit isomorphism construction --------------------------------------


def _hom_space(piece: FiniteModule, target: FiniteModule) -> list[tuple[F2Matrix, ...]]:
    """Basis of the space of module maps piece -> target (degreewise matrices).

    Unknowns are all matrix entries; commutation with each operator gives the
    linear constraints.
    """
    degrees = list(range(piece.dmin, piece.dmax + 1))
    offsets = {}
    total = 0
    for d in degrees:
        offsets[d] = total
        total += piece.dim(d) * target.dim(d)

    def var(d, i, j):  # entry (i, j) of f_d
        return offsets[d] + i * piece.dim(d) + j

    rows = []
    for op, shift in ALGEBRA_OPS[piece.algebra]:
        for d in degrees:
            sp = piece.op_matrix(op, d)  # piece_d -> piece_{d+shift}
            st = target.op_matrix(op, d)  # target_d -> target_{d+shift}
            for r in range(target.dim(d + shift)):
                for c in range(piece.dim(d)):
                    bits = 0
                    if d + shift in offsets:
                        fd2 = d + shift
                        for j in range(piece.dim(fd2)):
                            if sp.entry(j, c):
                                bits ^= 1 << var(fd2, r, j)
                    for j in range(target.dim(d)):
                        if st.entry(r, j):
                            bits ^= 1 << var(d, j, c)
                    if bits:
                        rows.append(bits)
    constraint = F2Matrix(len(rows), total, rows)
    basis = []
    for v in constraint.kernel_basis():
        mats = []
        for d in degrees:
            rows_m = [0] * target.dim(d)
            for i in range(target.dim(d)):
                for j in range(piece.dim(d)):
                    if (v.bits >> var(d, i, j)) & 1:
                        rows_m[i] |= 1 << j
            mats.append(F2Matrix(target.dim(d), piece.dim(d), rows_m))
        basis.append(tuple(mats))
    return basis


_HOM_ENUM_CAP = 14  # enumerate at most 2^cap candidate maps per piece


def _build_isomorphism(module: FiniteModule, solution) -> ModuleMap | None:
    """Greedy piece-peeling: choose an embedding for each piece, in canonical
    order, keeping the running sum injective; backtrack on failure."""
    algebra = module.algebra
    if not solution:
        empty = zero_module(algebra)
        if any(module.dim(d) for d in range(module.dmin, module.reliable_max() + 1)):
            return None
        return zero_map(empty, module) if module.total_dim() else identity_map(module)
    pieces = sorted(
        solution,
        key=lambda ps: (standard_piece(algebra, ps[0]).dmin + ps[1], -standard_piece(algebra, ps[0]).total_dim(), ps[0]),
    )
    templates = [standard_piece(algebra, name).suspend(s) for name, s in pieces]

    hom_bases = []
    for t in templates:
        hb = _hom_space(t, module)
        if len(hb) > _HOM_ENUM_CAP:
            return None
        hom_bases.append(hb)

    lo = min([module.dmin] + [t.dmin for t in templates])
    hi = max([module.dmax] + [t.dmax for t in templates])

    # running reduced spans per degree
    def try_place(idx, spans):
        if idx == len(templates):
            return []
        t = templates[idx]
        hb = hom_bases[idx]
        for mask in range(1, 1 << len(hb)):
            mats = None
            for b in range(len(hb)):
                if (mask >> b) & 1:
                    if mats is None:
                        mats = list(hb[b])
                    else:
                        mats = [
                            F2Matrix(m1.nrows, m1.ncols, [r1 ^ r2 for r1, r2 in zip(m1.rows, m2.rows)])
                            for m1, m2 in zip(mats, hb[b])
                        ]
            # check injectivity of this piece map and transversality to spans
            new_spans = {d: dict(p) for d, p in spans.items()}
            ok = True
            for di, d in enumerate(range(t.dmin, t.dmax + 1)):
                if t.dim(d) == 0:
                    continue
                cols = mats[di].transpose().rows  # images of basis vectors
                pivots = new_spans.setdefault(d, {})
                for v in cols:
                    row = v
                    scan = row
                    while scan:
                        col = scan.bit_length() - 1
                        p = pivots.get(col)
                        if p is not None:
                            row ^= p
                        scan = row & ((1 << col) - 1)
                    if row == 0:
                        ok = False
                        break
                    pivots[row.bit_length() - 1] = row
                if not ok:
                    break
            if not ok:
                continue
            rest = try_place(idx + 1, new_spans)
            if rest is not None:
                return [mats] + rest
        return None

    placed = try_place(0, {})
    if placed is None:
        return None

    # assemble the direct sum and the stacked map
    total = templates[0]
    for t in templates[1:]:
        total = total.direct_sum(t)
    mats = []
    for d in range(total.dmin, total.dmax + 1):
        rows = [0] * module.dim(d)
        col_offset = 0
        for t, block in zip(templates, placed):
            di = d - t.dmin
            if 0 <= di < len(t.dims) and t.dim(d):
                m = block[di]
                for i in range(m.nrows):
                    rows[i] |= m.rows[i] << col_offset
            col_offset += t.dim(d)
        mats.append(F2Matrix(module.dim(d), total.dim(d), rows))

    fmap = ModuleMap(total, module, tuple(mats))
    top = module.reliable_max()
    if not fmap.check_commutes(top=top):
        return None
    for d in range(min(total.dmin, module.dmin), top + 1):
        if total.dim(d) != module.dim(d) or fmap.mat(d).rank() != total.dim(d):
            return None
    return fmap


# ---------------------------------------------------------------------------
# the split-injection certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitCertificate:
    hypotheses_met: bool
    f_injective: bool
    q0_margolis_injective: bool
    witness_degree: int | None

    @property
    def split_guaranteed(self) -> bool:
        return self.hypotheses_met and self.f_injective and self.q0_margolis_injective


def check_split_criterion(f: ModuleMap) -> SplitCertificate:
    """The two-condition split test for a map of A(1)-modules.

    Requires the source to decompose into suspensions of {Z2, J, A(1)} and
    the target into suspensions of {Z2, I, J, K, A(1)}; then injectivity of f
    together with injectivity on Q_0-Margolis homology guarantees a split.
    """
    if f.source.algebra != "A1":
        raise ModuleError("split criterion applies to A(1)-modules")
    src_type = stable_type_solve(f.source, pieces=("Z2", "J", "A1"), build_iso=True)
    tgt_type = stable_type_solve(
        f.target, pieces=("Z2", "I", "J", "K", "A1"), build_iso=True
    )
    hypotheses = src_type.status == "unique" and tgt_type.status == "unique"
    injective = f.is_injective() and f.check_commutes()
    q0_ok, witness = f.margolis_induced_injective("q0")
    return SplitCertificate(hypotheses, injective, q0_ok, witness)


# ---------------------------------------------------------------------------
# periodic free-plus-pieces feasibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicFeasibility:
    feasible: bool
    counts: dict | None
    free_generators: tuple[int, ...] | None
    note: str = ""


def four_piece_feasibility(module: FiniteModule) -> bool:
    """Whether the module decomposes, over the reliable window, into copies
    of A(1), Z2, I, J and K at unrestricted suspensions (counting level)."""
    result = stable_type_solve(module, build_iso=False, max_solutions=2)
    return result.status in ("unique", "ambiguous")


def eight_fold_feasibility(module: FiniteModule) -> PeriodicFeasibility:
    """Consistency of a decomposition into a free A(1)-module plus 8i-fold
    suspensions of Z2, I@-1, J@4 and K@4.

    The Margolis signatures of the four non-free pieces make the counting
    system triangular: both series determine the candidate counts degree by
    degree, and the leftover dimension series must then be a non-negative
    combination of shifted copies of A(1).  This checks feasibility only.
    """
    if module.algebra != "A1":
        raise ModuleError("expected an A(1)-module")
    lo, hi = module.dmin, module.reliable_max()
    q0m = {d: module.margolis_homology("q0")[d][0] for d in range(lo, hi + 1)}
    q1m = {d: module.margolis_homology("q1")[d][0] for d in range(lo, hi + 1)}

    # margolis signatures of the placed pieces (computed, then used blind)
    def signature(name, susp):
        t = standard_piece("A1", name).suspend(susp)
        return (
            {d: v for d, (v, _) in t.margolis_homology("q0").items() if v},
            {d: v for d, (v, _) in t.margolis_homology("q1").items() if v},
        )

    counts: dict[tuple[str, int], int] = {}
    rem_q0, rem_q1 = dict(q0m), dict(q1m)
    for i in range(0, hi // 8 + 2):
        placements = [("Z2", 8 * i), ("I", 8 * i - 1), ("J", 8 * i + 4), ("K", 8 * i + 4)]
        # solve in an order where each piece is pinned by a fresh degree:
        # q1 at 8i pins Z2; q0 at 8i then pins I; q0 at 8i+4 pins K;
        # q0 at 8i+6 pins J.
        sig = {name: signature(name, susp) for name, susp in placements}
        z = rem_q1.get(8 * i, 0)
        k = rem_q0.get(8 * i + 4, 0)
        j = rem_q0.get(8 * i + 6, 0)
        ii = rem_q0.get(8 * i, 0) - z
        if min(z, k, j, ii) < 0:
            return PeriodicFeasibility(False, None, None, f"negative count in block {i}")
        for (name, susp), count in zip(placements, (z, ii, j, k)):
            if count:
                counts[(name, susp)] = count
                s0, s1 = sig[name]
                for d, v in s0.items():
                    if lo <= d <= hi:
                        rem_q0[d] = rem_q0.get(d, 0) - v * count
                for d, v in s1.items():
                    if lo <= d <= hi:
                        rem_q1[d] = rem_q1.get(d, 0) - v * count
    leftover_q0 = sorted(d for d, v in rem_q0.items() if v)
    leftover_q1 = sorted(d for d, v in rem_q1.items() if v)
    if leftover_q0 or leftover_q1:
        return PeriodicFeasibility(
            False,
            None,
            None,
            f"margolis series not matched (q0 left at {leftover_q0},"
            f" q1 left at {leftover_q1})",
        )

    # leftover dimensions must be free: greedy generator counts
    residual = {d: module.dim(d) for d in range(lo, hi + 1)}
    for (name, susp), count in counts.items():
        t = standard_piece("A1", name).suspend(susp)
        for d in range(lo, hi + 1):
            residual[d] -= count * t.dim(d)
    a1 = standard_piece("A1", "A1")
    free = {}
    for d in range(lo, hi + 1):
        val = residual[d]
        for d0, cnt in free.items():
            val -= cnt * a1.dim(d - d0)
        if val < 0:
            return PeriodicFeasibility(False, None, None, f"dimension deficit at degree {d}")
        if val:
            free[d] = val
    # only degrees with full A(1) support below the reliable top are certain;
    # trailing degrees could need pieces we cannot see, so this is feasibility
    return PeriodicFeasibility(True, dict(counts), tuple(sorted(free.items())))
