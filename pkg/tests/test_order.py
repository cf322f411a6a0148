"""Semi-order model: insertion validation, width, interval representation."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semichain import SemiOrder
from semichain.errors import (
    DownUpOverlap,
    NotDownwardClosed,
    NotUpwardClosed,
    OrderError,
    ThreePlusOne,
    TwoPlusTwo,
)
from semichain.oracle import RawOrder, brute_forbidden, brute_width, is_transitively_consistent

from conftest import build_random_order, random_candidate


class TestAddPoint:
    def test_first_point(self):
        order = SemiOrder()
        assert order.add_point() == 0
        assert order.size == 1

    def test_cover_one_of_two_minimal(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        p = order.add_point(down=[0])
        assert p == 2
        assert order.less(0, 2) and not order.less(1, 2) and not order.less(2, 1)

    def test_isolated_point_over_three_chain_rejected(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        order.add_point(down=[0, 1])
        with pytest.raises(ThreePlusOne):
            order.add_point()
        assert order.size == 3  # mutation only on success

    def test_incomparable_down_sets_rejected(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        order.add_point()
        with pytest.raises(TwoPlusTwo):
            order.add_point(down=[2])

    def test_down_up_overlap(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        with pytest.raises(DownUpOverlap):
            order.add_point(down=[0], up=[0])

    def test_not_downward_closed(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        with pytest.raises(NotDownwardClosed):
            order.add_point(down=[1])  # omits 0 < 1

    def test_not_upward_closed(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        with pytest.raises(NotUpwardClosed):
            order.add_point(up=[0])  # omits 1 > 0

    def test_unknown_ids_rejected(self):
        order = SemiOrder()
        with pytest.raises(ValueError):
            order.add_point(down=[3])

    def test_sets_must_be_preclosed_not_inferred(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        order.add_point(down=[0, 1])
        # dominating 1 without declaring 0 is rejected, never silently closed
        with pytest.raises(NotDownwardClosed):
            order.add_point(down=[1])


class TestQueries:
    def test_width_antichain_and_chain(self):
        antichain = SemiOrder()
        for _ in range(5):
            antichain.add_point()
        assert antichain.width() == 5
        chain = SemiOrder()
        for i in range(4):
            chain.add_point(down=list(range(i)))
        assert chain.width() == 1

    def test_fan_width(self, fan_order):
        assert fan_order.width() == 3

    def test_incomparables(self, fan_order):
        antichain = SemiOrder()
        for _ in range(3):
            antichain.add_point()
        assert antichain.incomparables(0) == {1, 2}
        chain = SemiOrder()
        chain.add_point()
        chain.add_point(down=[0])
        assert chain.incomparables(1) == set()
        assert fan_order.incomparables(3) == {2, 4}

    def test_maximal_points(self, fan_order):
        two = SemiOrder()
        two.add_point()
        two.add_point()
        assert two.maximal_points() == {0, 1}
        chain = SemiOrder()
        chain.add_point()
        chain.add_point(down=[0])
        assert chain.maximal_points() == {1}
        assert fan_order.maximal_points() == {3, 4}

    def test_up_down_sets(self, fan_order):
        assert fan_order.down_set(3) == {0, 1}
        assert fan_order.up_set(0) == {3, 4}
        assert fan_order.up_set(4) == set()


class TestIntervalRepresentation:
    def test_two_chain_canonical(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        rep = order.interval_representation()
        assert rep.left[0] == 0
        assert rep.left[1] > Fraction(1)  # any gap > 1 is a valid answer
        assert rep.left == (Fraction(0), Fraction(4, 3))

    def test_antichain_touching_or_overlapping(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        rep = order.interval_representation()
        assert abs(rep.left[0] - rep.left[1]) <= 1
        assert not rep.less(0, 1) and not rep.less(1, 0)

    @pytest.mark.parametrize("seed", range(30))
    @pytest.mark.parametrize("mode", ["general", "up_growing"])
    def test_round_trip(self, seed, mode):
        order = build_random_order(seed, w=5, n=24, mode=mode)
        rep = order.interval_representation()
        n = order.size
        for p in range(n):
            for q in range(n):
                if p != q:
                    assert rep.less(p, q) == order.less(p, q)


class TestOracleEquivalence:
    """Incremental acceptance must coincide with closure + pattern scan."""

    @pytest.mark.parametrize("seed", range(60))
    def test_acceptance_equivalence(self, seed):
        rng = random.Random(seed)
        order = build_random_order(seed, w=4, n=rng.randrange(1, 36), mode="general")
        for _ in range(10):
            down, up = random_candidate(rng, order)
            raw = RawOrder.candidate(order, down, up)
            oracle_ok = is_transitively_consistent(raw) and brute_forbidden(raw) is None
            before = order.size
            try:
                order.add_point(down, up)
                engine_ok = True
                order.remove_last()
            except OrderError:
                engine_ok = False
            assert order.size == before
            assert engine_ok == oracle_ok, (down, up)

    @given(seed=st.integers(0, 10**6), n=st.integers(1, 28))
    @settings(max_examples=40, deadline=None)
    def test_accepted_orders_have_no_forbidden_pattern(self, seed, n):
        order = build_random_order(seed, w=4, n=n, mode="general")
        assert brute_forbidden(order) is None

    @pytest.mark.parametrize("seed", range(25))
    def test_width_matches_brute_force(self, seed):
        order = build_random_order(seed, w=4, n=18, mode="general")
        assert order.width() == brute_width(order)

    @pytest.mark.parametrize("seed", range(20))
    def test_up_sets_linear_when_down_sets_are(self, seed):
        order = build_random_order(seed, w=5, n=30, mode="general")
        n = order.size
        for p in range(n):
            for q in range(n):
                dp, dq = order.down_mask(p), order.down_mask(q)
                assert dp & ~dq == 0 or dq & ~dp == 0
                up_, uq = order.up_mask(p), order.up_mask(q)
                assert up_ & ~uq == 0 or uq & ~up_ == 0


def test_remove_last_restores_state():
    order = SemiOrder()
    order.add_point()
    order.add_point(down=[0])
    key = order.state_key()
    order.add_point(down=[0, 1])
    order.remove_last()
    assert order.state_key() == key
    assert order.up_set(1) == set()
