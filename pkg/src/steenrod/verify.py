"""Named verification suites: each re-derives one family of computations.

A suite returns a list of CheckResult rows; a check is `pass`, `fail`, or
`provisional` (the latter for conclusions drawn inside a truncation fringe).
Suites are pure and deterministic, so reports are byte-stable for a fixed
cap.  The default caps are chosen so the whole battery completes in seconds
to a few minutes on commodity hardware: Hopf-axiom suites stop at degree 12,
module and series suites at 40, the primitives table at 64 and the
primitive-transfer sweep at 32.

Three rows are expected to fail by design and carry witnesses; they are
listed in EXPECTED_FINDINGS.  Two stem from the same degree-6 edge case:
the degree-6 indecomposable generator (the square of the degree-3 class)
lies in the comparison subring, so the closed-form rule misses it, and the
corresponding degree-6 primitive dies on both transfer legs.  The third is
the strict eight-fold placement family for the quaternionic base ring,
whose Margolis series the computed module demonstrably does not match
(pieces of the same four types at other suspensions do cover it).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import algebra, bundles, charclass, dual, modules
from .algebra import SteenrodElement, admissible_basis
from .dual import DualElement, SubHopfAlgebra
from .f2 import WeightedPolyRing, geometric_series_product, series_of_ring


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: str  # pass | fail | provisional
    witness: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: tuple[CheckResult, ...]

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "provisional": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts["fail"] == 0


def _check(check_id: str, ok: bool, witness: str = "") -> CheckResult:
    return CheckResult(check_id, "pass" if ok else "fail", witness if not ok else "")


def _eq(check_id: str, got, want) -> CheckResult:
    return _check(check_id, got == want, f"got {got}, want {want}")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

Sq = SteenrodElement.sq


def suite_hopf(max_degree: int = 12) -> list[CheckResult]:
    checks = [
        _eq("Sq1 Sq2 = Sq3", Sq(1, 2), Sq(3)),
        _eq("Sq2 Sq2 = Sq3 Sq1", Sq(2, 2), Sq(3, 1)),
        _eq("Sq2 Sq1 Sq2 = Sq4 Sq1 + Sq5", Sq(2, 1, 2), Sq(4, 1) + Sq(5)),
        _eq("Sq2 Sq2 Sq2 = Sq5 Sq1", Sq(2, 2, 2), Sq(5, 1)),
        _eq("chi(Sq3) = Sq2 Sq1", Sq(3).antipode(), Sq(2, 1)),
        _eq(
            "A(1) basis has eight elements",
            len(dual.basis_of(SubHopfAlgebra("A", 1))),
            8,
        ),
    ]
    words = [w for d in range(max_degree + 1) for w in admissible_basis(d)]
    coassoc = algebra_map = antipode_axiom = involution = True
    witness = ""
    for w in words:
        x = SteenrodElement.from_words([w])
        delta = x.coproduct()
        left = {}
        right = {}
        for (a, b) in delta.pairs:
            for (a1, a2) in algebra.coproduct_word(a):
                key = (a1, a2, b)
                left[key] = left.get(key, 0) ^ 1
            for (b1, b2) in algebra.coproduct_word(b):
                key = (a, b1, b2)
                right[key] = right.get(key, 0) ^ 1
        if {k for k, v in left.items() if v} != {k for k, v in right.items() if v}:
            coassoc, witness = False, str(x)
            break
    checks.append(_check(f"coassociativity through degree {max_degree}", coassoc, witness))

    pool = [w for d in range(max_degree // 2 + 1) for w in admissible_basis(d)]
    witness = ""
    for a in pool:
        for b in pool:
            if sum(a) + sum(b) > max_degree:
                continue
            ea, eb = SteenrodElement.from_words([a]), SteenrodElement.from_words([b])
            if (ea * eb).coproduct() != ea.coproduct() * eb.coproduct():
                algebra_map, witness = False, f"{ea} (x) {eb}"
                break
    checks.append(_check(f"coproduct is an algebra map through degree {max_degree}", algebra_map, witness))

    witness = ""
    for w in words:
        x = SteenrodElement.from_words([w])
        folded = x.coproduct().apply_left(
            lambda a: SteenrodElement.from_words([a]).antipode()
        ).multiply_out()
        want = SteenrodElement.one() if not w else SteenrodElement.zero()
        if folded != want:
            antipode_axiom, witness = False, str(x)
            break
        if x.antipode().antipode() != x:
            involution, witness = False, str(x)
            break
    checks.append(_check(f"antipode axiom through degree {max_degree}", antipode_axiom, witness))
    checks.append(_check(f"antipode is an involution through degree {max_degree}", involution, witness))
    return checks


def suite_pairing(max_degree: int = 12) -> list[CheckResult]:
    xi = DualElement.xi
    checks = []
    want = dual.DualTensor(frozenset({((0, 1), ()), ((2,), (1,)), ((), (0, 1))}))
    checks.append(_eq("coproduct of xi_2", dual.dual_coproduct(xi(2)), want))

    ok, witness = True, ""
    for n in range(1, 7):
        acc = DualElement.zero()
        for i in range(n + 1):
            acc = acc + (xi(i) ** (1 << (n - i))) * dual.zeta(n - i)
        if not acc.is_zero():
            ok, witness = False, f"n={n}"
            break
    checks.append(_check("conjugate recursion identity n <= 6", ok, witness))

    ok, witness = True, ""
    for n in range(max_degree + 1):
        monos, words, matrix = dual.pairing_matrix(n)
        if matrix.rank() != len(words):
            ok, witness = False, f"degree {n} not invertible"
            break
        for i in range(len(monos)):
            if matrix.entry(i, i) != 1 or any(matrix.entry(i, j) for j in range(i)):
                ok, witness = False, f"degree {n} not unitriangular"
                break
    checks.append(_check(f"pairing matrices unitriangular through degree {max_degree}", ok, witness))

    ok, witness = True, ""
    for n in range(21):
        if len(dual.xi_monomials(n)) != len(admissible_basis(n)):
            ok, witness = False, f"degree {n}"
            break
    checks.append(_check("basis counts agree through degree 20", ok, witness))

    q = dual.milnor_primitive
    checks.append(_eq("Sq(0,1) = Sq3 + Sq2 Sq1", dual.milnor_to_admissible((0, 1)), Sq(3) + Sq(2, 1)))
    ok = all((q(i) * q(i)).is_zero() for i in range(3))
    checks.append(_check("milnor primitives square to zero", ok))
    checks.append(
        _check(
            "milnor primitives commute",
            all(
                (q(i) * q(j) + q(j) * q(i)).is_zero()
                for i in range(3)
                for j in range(3)
            ),
        )
    )

    ok, witness = True, ""
    for n in range(13):
        for w in admissible_basis(n):
            x = SteenrodElement.from_words([w])
            back = SteenrodElement.zero()
            for seq in dual.admissible_to_milnor(x):
                back = back + dual.milnor_to_admissible(seq)
            if back != x:
                ok, witness = False, str(x)
                break
    checks.append(_check("basis conversion round-trip through degree 12", ok, witness))
    return checks


def suite_dual_quotients(max_degree: int = 16) -> list[CheckResult]:
    checks = []
    xi = DualElement.xi
    expectations = {
        "A(0)": [xi(1) ** 2, xi(2), xi(3)],
        "A(1)": [xi(1) ** 4, xi(2) ** 2, xi(3), xi(4)],
        "E(1)": [xi(1) ** 2, xi(2) ** 2, xi(3), xi(4)],
    }
    algebras = {
        "A(0)": SubHopfAlgebra("A", 0),
        "A(1)": SubHopfAlgebra("A", 1),
        "E(1)": SubHopfAlgebra("E", 1),
    }
    for name, h in algebras.items():
        gens = dual.dual_quotient_generators(h, 15)
        checks.append(
            _eq(f"{name}: quotient generators", gens[: len(expectations[name])], expectations[name])
        )
        gen_monos = [next(iter(g.monomials)) for g in gens]
        degrees = [dual.xi_degree(m) for m in gen_monos]

        ok, witness = True, ""

        def products(i, acc, deg):
            yield acc
            for j in range(i, len(gen_monos)):
                if deg + degrees[j] <= max_degree:
                    yield from products(
                        j,
                        acc * DualElement(frozenset({gen_monos[j]})),
                        deg + degrees[j],
                    )

        for prod in products(0, DualElement.one(), 0):
            if not dual.verify_cotensor_member(prod, h):
                ok, witness = False, str(prod)
                break
        checks.append(
            _check(f"{name}: generator products lie in the cotensor through degree {max_degree}", ok, witness)
        )
    return checks


def suite_bpsp_model(max_degree: int = 24) -> list[CheckResult]:
    rows = bundles.restriction_model_report()
    from steenrod.action import check_presentation

    out = [_check(c.check_id, c.ok, c.witness) for c in rows]
    report = check_presentation(bundles.bpsp3_presentation(), max_degree, adem_max=4)
    out.append(_check(f"derived ring consistent through degree {max_degree}", report.ok, report.witness or ""))
    return out


def suite_cp2_transfer(max_degree: int = 10) -> list[CheckResult]:
    return [_check(c.check_id, c.ok, c.witness) for c in bundles.cp2_transfer_report(max_degree)]


def suite_hp2_transfer(max_degree: int = 4) -> list[CheckResult]:
    rows = bundles.hp2_transfer_report(3, min(max_degree, 4), samples=200)
    return [_check(c.check_id, c.ok, c.witness) for c in rows]


def suite_a1_modules(max_degree: int = 40) -> list[CheckResult]:
    checks = []
    ring = WeightedPolyRing.make(("t2", 2), ("t3", 3), ("t8", 8), ("t12", 12))
    lhs = series_of_ring(ring, 60)
    rhs = geometric_series_product([2, 3, 8, 12], 60)
    checks.append(_eq("dimension series of the t-ring through degree 60", lhs, rhs))

    expectations = {
        "A1": (("E1", 0), ("E1", 2)),
        "I": (("E1", 2), ("L", 0)),
        "J": (("E1", 0), ("Z2", 2)),
        "K": (("L", -1),),
    }
    for name, want in expectations.items():
        r = modules.stable_type_solve(modules.restrict_to_e1(modules.standard_piece("A1", name)))
        ok = r.status == "unique" and r.pieces == want and r.iso is not None
        checks.append(_check(f"restriction of {name}", ok, f"{r.status}: {r.solutions[:2]}"))

    a1 = modules.standard_piece("A1", "A1")
    cert = modules.check_split_criterion(modules.identity_map(a1))
    checks.append(_check("identity map certified split", cert.split_guaranteed))

    j2 = modules.standard_piece("A1", "J").suspend(2)
    fmap = None
    for mats in modules._hom_space(j2, a1):
        cand = modules.ModuleMap(j2, a1, tuple(mats))
        if cand.is_injective():
            fmap = cand
            break
    cert = modules.check_split_criterion(fmap)
    checks.append(
        _check(
            "suspended joker inclusion rejected at the margolis stage",
            cert.f_injective and not cert.q0_margolis_injective and cert.witness_degree == 4,
        )
    )

    zmap = modules.zero_map(modules.standard_piece("A1", "Z2"), a1)
    checks.append(_check("zero map rejected", not modules.check_split_criterion(zmap).f_injective))

    m = modules.from_presentation(bundles.bpsp3_presentation(), "A1", (0, max_degree))
    checks.append(
        _check(
            f"four piece types plus free cover [0, {max_degree}]",
            modules.four_piece_feasibility(m),
        )
    )
    # The strict placement family (trivial pieces only at 8i, the ideal at
    # 8i-1, the jokers and K only at 8i+4) cannot reproduce the computed
    # Margolis series: the degree-4 class already needs a joker at
    # suspension 2.  Reported as a finding.
    res = modules.eight_fold_feasibility(m)
    checks.append(
        CheckResult(
            "strict eight-fold placement family",
            "pass" if res.feasible else "fail",
            res.note,
        )
    )
    return checks


def suite_e1_modules(max_degree: int = 40) -> list[CheckResult]:
    checks = []
    base86 = series_of_ring(WeightedPolyRing.make(("a", 8), ("b", 6)), 60)
    base8 = series_of_ring(WeightedPolyRing.make(("a", 8)), 60)
    ring46 = series_of_ring(WeightedPolyRing.make(("y4", 4), ("y6", 6)), 60)
    ok, witness = True, ""
    for d in range(61):
        two_cell = (base86[d - 4] if d >= 4 else 0) + (base86[d - 6] if d >= 6 else 0)
        if ring46[d] != base8[d] + two_cell:
            ok, witness = False, f"degree {d}"
            break
    checks.append(_check("bookkeeping decomposition series through degree 60", ok, witness))

    m = modules.from_presentation(bundles.bsu3_presentation(), "E1", (0, max_degree))
    r = modules.stable_type_solve(m)
    want = []
    for d in range(0, m.reliable_max() + 1):
        want.extend([("Z2", d)] * m.dim(d))
    ok = r.status == "unique" and r.pieces == tuple(sorted(want)) and r.iso is not None
    checks.append(
        _check(
            f"evenly graded ring splits into trivial pieces on [0, {max_degree}]",
            ok,
            r.status,
        )
    )
    both_zero = all(
        not any(m.op_matrix(op, d).rows)
        for op in ("q0", "q1")
        for d in range(0, m.reliable_max())
    )
    checks.append(_check("both differentials vanish identically", both_zero))
    return checks


def suite_primitives(max_degree: int = 64, kernel_limit: int = 12) -> list[CheckResult]:
    checks = []
    for space in ("bso", "bspin", "bspinc"):
        mdl = charclass.model(space, max(max_degree, 34))
        ok, witness = True, ""
        for n in range(2, max_degree + 1):
            r = mdl.primitives(n, kernel_limit=kernel_limit)
            if not r.verified:
                ok, witness = False, f"degree {n}: dim {r.dimension}, {r.formula}"
                break
        checks.append(_check(f"{space}: table verified through degree {max_degree}", ok, witness))
    checks.append(
        _eq(
            "s17 under naive substitution",
            charclass.poly_str(charclass.s17_naive_substitution()),
            "w7*w10 + w6*w11 + w4*w13",
        )
    )
    for k in range(4):
        res = charclass.power_sum_vanishing_check(k)
        checks.append(_check(f"power-sum vanishing chain k={k}", res.ok))
    return checks


def suite_power_sums(max_degree: int = 3) -> list[CheckResult]:
    checks = []
    # max_degree bounds the exponent k of the family s_(2^k + 1); the model
    # cap (64) admits k <= 4
    for k in range(min(max_degree, 4) + 1):
        res = charclass.power_sum_vanishing_check(k)
        checks.append(_check(f"total-square identity k={k}", res.total_square_identity))
        checks.append(_check(f"square component step k={k}", res.squares_to_next))
        checks.append(_check(f"reduces to zero in the quotient k={k}", res.reduces_to_zero))
        checks.append(_check(f"exact ideal membership k={k}", res.in_honest_ideal))
    return checks


def suite_indecomposables(max_degree: int = 32) -> list[CheckResult]:
    table = charclass.spinc_homology_indecomposables(max_degree)
    checks = [
        _eq("degree 3", table.dims[3], 0),
        _eq("degree 4", table.dims[4], 1),
        _eq("degree 7", table.dims[7], 0),
    ]
    # The closed-form rule misses degree 6: the square of the degree-3
    # generator lies in the comparison subring.  Reported as a finding.
    for n in range(max_degree + 1):
        if table.dims[n] != table.rule(n):
            checks.append(
                CheckResult(
                    f"closed-form rule at degree {n}",
                    "fail",
                    f"table has {table.dims[n]}, rule predicts {table.rule(n)}"
                    " (the degree-6 generator is the square of the degree-3 one"
                    " and lies in the comparison subring)",
                )
            )
    ok = set(table.rule_violations) <= {6}
    checks.append(_check("rule discrepancies limited to degree 6", ok, str(table.rule_violations)))
    return checks


def suite_primitive_transfer(max_degree: int = 32) -> list[CheckResult]:
    checks = []
    for r in bundles.primitive_transfer_check(max_degree):
        if r.detected:
            checks.append(CheckResult(f"degree {r.degree} ({r.formula})", "pass"))
        else:
            checks.append(
                CheckResult(
                    f"degree {r.degree} ({r.formula})",
                    "fail",
                    f"both legs vanish: cp2 leg {r.cp2_value}, hp2 leg {r.hp2_value}"
                    " (the transfer drops 4 and 8 degrees; degree 6 cannot be seen)",
                )
            )
    return checks


SUITES = {
    "hopf": (suite_hopf, 12),
    "pairing": (suite_pairing, 12),
    "dual-quotients": (suite_dual_quotients, 16),
    "bpsp-model": (suite_bpsp_model, 24),
    "cp2-transfer": (suite_cp2_transfer, 10),
    "hp2-transfer": (suite_hp2_transfer, 4),
    "a1-modules": (suite_a1_modules, 40),
    "e1-modules": (suite_e1_modules, 40),
    "primitives": (suite_primitives, 64),
    "power-sums": (suite_power_sums, 3),
    "indecomposables": (suite_indecomposables, 32),
    "primitive-transfer": (suite_primitive_transfer, 32),
}

EXPECTED_FINDINGS = {
    ("indecomposables", "closed-form rule at degree 6"),
    ("primitive-transfer", "degree 6 (s3,3)"),
    ("a1-modules", "strict eight-fold placement family"),
}


def run_suites(names: list[str], max_degree: int | None = None) -> list[SuiteReport]:
    """Run suites in name order; caps come from the argument, then the
    STEENROD_CAP_<SUITE> environment variable, then the documented default."""
    reports = []
    for name in sorted(names):
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        fn, default_cap = SUITES[name]
        cap = max_degree
        if cap is None:
            env = os.environ.get("STEENROD_CAP_" + name.upper().replace("-", "_"))
            cap = int(env) if env else default_cap
        reports.append(SuiteReport(name, tuple(fn(cap))))
    return reports
