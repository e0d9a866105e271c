import pytest

from steenrod.action import check_presentation
from steenrod.bundles import (
    BundleError,
    bpsp3_presentation,
    bsu3_presentation,
    bu3_presentation,
    bundle,
    bookkeeping_report,
    cp2_bundle,
    cp2_transfer_report,
    hp2_bundle,
    hp2_transfer_report,
    module_property_check,
    primitive_transfer_check,
    restriction_model_report,
    restriction_model,
    substitute_vertical,
)
from steenrod.charclass import wmono_from
from steenrod.f2 import F2Poly


class TestDerivedPresentations:
    def test_bpsp3_action_table(self):
        p = bpsp3_presentation()
        R = p.ring
        assert p.sq(1, R.gen("t2")) == R.gen("t3")
        assert p.sq(2, R.gen("t2")) == R.parse("t2^2")
        assert p.sq(1, R.gen("t3")).is_zero()
        assert p.sq(2, R.gen("t3")) == R.parse("t2*t3")
        assert p.sq(1, R.gen("t8")).is_zero()
        assert p.sq(2, R.gen("t8")).is_zero()
        assert p.sq(1, R.gen("t12")).is_zero()
        assert p.sq(2, R.gen("t12")) == R.parse("t2*t12")

    def test_bpsp3_passes_full_consistency_to_degree_24(self):
        assert check_presentation(bpsp3_presentation(), 24, adem_max=4).ok

    def test_bsu3_action_table(self):
        p = bsu3_presentation()
        R = p.ring
        assert p.sq(2, R.gen("y4")) == R.gen("y6")
        assert p.sq(1, R.gen("y4")).is_zero()
        assert p.sq(2, R.gen("y6")).is_zero()
        assert p.sq(4, R.gen("y6")) == R.parse("y4*y6")

    def test_bu3_chern_identities(self):
        p = bu3_presentation()
        R = p.ring
        assert p.sq(2, R.gen("c4")) == R.parse("c2*c4 + c6")
        assert p.sq(2, R.gen("c6")) == R.parse("c2*c6")

    def test_subring_membership_guard(self):
        from steenrod.bundles import derive_presentation, rank_one_model

        m = rank_one_model(("a", "b"))
        with pytest.raises(BundleError):
            # a + b generates a subring that does not contain Sq-images of a*b
            derive_presentation(m, [("g", m.ring.parse("a*b"))])


class TestLerayHirsch:
    def test_cp2_reduce_pullback_class(self):
        b = cp2_bundle()
        S, R = b.total.ring, b.base.ring
        coeffs = b.lh_reduce(S.parse("x2^2 + x4"))
        assert coeffs == (R.gen("y4"), R.zero(), R.zero())

    def test_cp2_reduce_x2_squared_round_trip(self):
        b = cp2_bundle()
        S = b.total.ring
        f = S.parse("x2^2")
        coeffs = b.lh_reduce(f)
        # oracle: re-expand sum pi^*(r_i) b_i and compare
        total = S.zero()
        for r, basis_elt in zip(coeffs, b.lh_basis):
            total = total + b.pullback.apply(r) * basis_elt
        assert total == f
        assert coeffs[2] == b.base.ring.one()

    def test_unit_reduces_to_unit(self):
        b = cp2_bundle()
        coeffs = b.lh_reduce(b.total.ring.one())
        assert coeffs == (b.base.ring.one(), b.base.ring.zero(), b.base.ring.zero())

    def test_round_trip_on_random_slices(self):
        for name in ("cp2", "hp2"):
            b = bundle(name)
            S = b.total.ring
            for degree in (8, 12, 17):
                for mono in S.monomials_of_degree(degree):
                    f = F2Poly(S, frozenset({mono}))
                    total = S.zero()
                    for r, basis_elt in zip(b.lh_reduce(f), b.lh_basis):
                        total = total + b.pullback.apply(r) * basis_elt
                    assert total == f

    def test_base_cases(self):
        b = cp2_bundle()
        S, R = b.total.ring, b.base.ring
        assert b.fiber_integrate(S.one()).is_zero()
        assert b.fiber_integrate(S.parse("x2")).is_zero()
        assert b.fiber_integrate(S.parse("x2^2")) == R.one()
        assert b.fiber_integrate(S.parse("x4^2")) == R.gen("y4")

    def test_hp2_base_case(self):
        b = hp2_bundle()
        S, R = b.total.ring, b.base.ring
        w4tau = S.parse("u2^2 + u4")
        assert b.fiber_integrate(w4tau * w4tau) == R.one()
        assert b.fiber_integrate(S.one()).is_zero()


class TestReports:
    def test_restriction_model_report_all_pass(self):
        assert all(c.ok for c in restriction_model_report())

    def test_cp2_report_all_pass(self):
        assert all(c.ok for c in cp2_transfer_report(10))

    def test_hp2_report_all_pass(self):
        checks = hp2_transfer_report(2, 3, samples=40)
        assert all(c.ok for c in checks)

    def test_bookkeeping_pass(self):
        assert all(c.ok for c in bookkeeping_report(30))

    def test_module_property_holds(self):
        for name in ("cp2", "hp2"):
            assert module_property_check(bundle(name), 30).ok

    def test_swapped_s_convention_still_splits_the_adjoint_class(self):
        m = restriction_model(swap_s_convention=True)
        one = m.pres.ring.one()
        t = one + m.t2 + m.t3
        lhs = t ** 3 * (t + m.s1) * (t + m.s2) * (t + m.s3)
        rhs = m.t12 * t ** 3 + m.t8 * t ** 4 + t ** 6
        assert lhs == rhs


class TestPrimitiveTransfer:
    def test_vertical_substitution(self):
        b = cp2_bundle()
        got = substitute_vertical(b, frozenset({wmono_from([2, 2, 2]), wmono_from([2, 4]), wmono_from([6])}))
        # w2^3 + w2 w4 + w6 -> x2^3 + x2 x4 (w6 component of the vertical class is 0)
        assert got == b.total.ring.parse("x2^3 + x2*x4")

    def test_degree_eight_detected_via_cp2(self):
        results = {r.degree: r for r in primitive_transfer_check(12)}
        r8 = results[8]
        assert r8.detected and r8.cp2_value == "y4"

    def test_degree_six_is_the_lone_miss_through_32(self):
        results = primitive_transfer_check(32)
        missed = [r.degree for r in results if not r.detected]
        assert missed == [6]

    def test_excluded_degrees_skipped(self):
        degrees = {r.degree for r in primitive_transfer_check(16)}
        for k in (3, 5, 7, 9, 15, 17):
            assert k not in degrees

    def test_inverse_class_mode_runs(self):
        direct = {r.degree: r.detected for r in primitive_transfer_check(12)}
        inverse = {
            r.degree: r.detected
            for r in primitive_transfer_check(12, use_inverse_class=True)
        }
        assert set(direct) == set(inverse)
