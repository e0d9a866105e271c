import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steenrod.action import (
    AlgebraMap,
    PresentationError,
    SqAlgebraPresentation,
    check_presentation,
    presentation_from_json,
    presentation_to_dict,
)
from steenrod.f2 import WeightedPolyRing


def rank_one_model(nvars):
    """Polynomial ring on degree-1 classes with Sq^1(v) = v^2."""
    ring = WeightedPolyRing(tuple((f"x{i}", 1) for i in range(1, nvars + 1)))
    return SqAlgebraPresentation.build(ring, {})


def chern_root_model(nvars):
    """Polynomial ring on degree-2 classes with Sq^1 = 0, Sq^2(v) = v^2."""
    ring = WeightedPolyRing(tuple((f"r{i}", 2) for i in range(1, nvars + 1)))
    return SqAlgebraPresentation.build(ring, {})


class TestGeneratorAction:
    def test_total_square_of_degree_one_class(self):
        p = rank_one_model(1)
        x = p.ring.parse("x1")
        assert p.total_sq(x) == p.ring.parse("x1 + x1^2")

    def test_total_square_of_x_squared(self):
        p = rank_one_model(1)
        x2 = p.ring.parse("x1^2")
        assert p.total_sq(x2) == p.ring.parse("x1^2 + x1^4")

    def test_total_sq_of_unit(self):
        p = rank_one_model(2)
        assert p.total_sq(p.ring.one()) == p.ring.one()

    def test_sq_above_degree_vanishes(self):
        p = rank_one_model(3)
        f = p.ring.parse("x1*x2*x3")
        assert p.sq(4, f).is_zero()
        assert p.sq(3, f) == f * f

    def test_instability_enforced_at_build_time(self):
        ring = WeightedPolyRing.make(("x", 1))
        with pytest.raises(PresentationError):
            SqAlgebraPresentation.build(ring, {"x": {1: "0"}})

    def test_inhomogeneous_declaration_rejected(self):
        ring = WeightedPolyRing.make(("a", 2), ("b", 3))
        with pytest.raises(PresentationError):
            SqAlgebraPresentation.build(ring, {"a": {1: "a + 1"}})


class TestCartan:
    @given(st.data())
    @settings(max_examples=30, deadline=None)
    def test_cartan_bilinearity_on_random_polynomials(self, data):
        p = rank_one_model(3)
        monos = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
        f = p.ring.from_monomials(data.draw(st.sets(monos, min_size=1, max_size=3)))
        g = p.ring.from_monomials(data.draw(st.sets(monos, min_size=1, max_size=3)))
        k = data.draw(st.integers(0, 6))
        lhs = p.sq(k, f * g)
        rhs = p.ring.zero()
        for i in range(k + 1):
            rhs = rhs + p.sq(i, f) * p.sq(k - i, g)
        assert lhs == rhs

    def test_total_sq_multiplicative(self):
        p = chern_root_model(2)
        f = p.ring.parse("r1 + r2^2")
        g = p.ring.parse("r1*r2")
        assert p.total_sq(f * g) == p.total_sq(f) * p.total_sq(g)

    def test_power_sum_total_square_re_expressed_in_power_sums(self):
        # total square of s_5 in 8 rank-one classes collapses to
        # s_5 + s_6 + s_9 + s_10
        p = rank_one_model(8)

        def power_sum(n):
            return p.ring.from_monomials(
                tuple(n if j == i else 0 for j in range(8)) for i in range(8)
            )

        got = p.total_sq(power_sum(5))
        want = power_sum(5) + power_sum(6) + power_sum(9) + power_sum(10)
        assert got == want


class TestChecker:
    def test_rank_one_model_passes(self):
        report = check_presentation(rank_one_model(2), 8)
        assert report.ok

    def test_trivial_ring_passes(self):
        ring = WeightedPolyRing(())
        p = SqAlgebraPresentation.build(ring, {})
        assert check_presentation(p, 5).ok

    def test_corrupted_action_reports_witness(self):
        # Sq^1(t2) = 0 instead of t3 breaks Sq^2 Sq^2 = Sq^1 Sq^2 Sq^1
        ring = WeightedPolyRing.make(("t2", 2), ("t3", 3))
        bad = SqAlgebraPresentation.build(
            ring,
            {
                "t2": {1: "0", 2: "t2^2"},
                "t3": {1: "0", 2: "t2*t3", 3: "t3^2"},
            },
        )
        report = check_presentation(bad, 8)
        assert not report.ok
        assert report.witness


class TestAlgebraMap:
    def test_frobenius_endomorphism_is_not_degree_preserving(self):
        p = rank_one_model(1)
        with pytest.raises(PresentationError):
            AlgebraMap(p, p, (p.ring.parse("x1^2"),))

    def test_equivariant_inclusion(self):
        # x -> x1 + x2 is induced by a diagonal and commutes with Sq
        small = rank_one_model(1)
        big = rank_one_model(2)
        phi = AlgebraMap(small, big, (big.ring.parse("x1 + x2"),))
        assert phi.check_equivariant().ok

    def test_non_equivariant_map_detected(self):
        # a degree-2 class with Sq^1 = 0 cannot map to a product of
        # degree-1 classes: Sq^1(v*w) = v^2 w + v w^2 is nonzero
        source = chern_root_model(1)
        target = rank_one_model(2)
        bad = AlgebraMap(source, target, (target.ring.parse("x1*x2"),))
        assert not bad.check_equivariant().ok


class TestSerialization:
    def test_json_round_trip(self):
        data = {
            "generators": [["t2", 2], ["t3", 3]],
            "action": {
                "t2": {"1": "t3", "2": "t2^2"},
                "t3": {"2": "t2*t3", "3": "t3^2"},
            },
        }
        p = presentation_from_json(json.dumps(data))
        assert p.sq(1, p.ring.parse("t2")) == p.ring.parse("t3")
        assert p.sq(1, p.ring.parse("t3")).is_zero()
        again = presentation_from_json(json.dumps(presentation_to_dict(p)))
        assert again == p
