"""Adversary strategies: exact values, plans, forcing traces, generators."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semichain import SemiOrder, game_value
from semichain.errors import InconsistentReply
from semichain.oracle import brute_forbidden, max_extra_chains
from semichain.partition import ChainPartition, first_fit_choose, random_valid_choose
from semichain.spoiler import (
    DoublerSpoiler,
    GoldenSpoiler,
    RandomGeneralSpoiler,
    RandomUpGrowingSpoiler,
    forcing_plan,
)


class TestGameValue:
    @pytest.mark.parametrize(
        "w,value", [(1, 1), (2, 3), (3, 4), (4, 6), (5, 8), (10, 16), (25, 40)]
    )
    def test_exact_values(self, w, value):
        assert game_value(w) == value

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            game_value(0)

    @given(st.integers(1, 10**9))
    @settings(max_examples=60, deadline=None)
    def test_floor_of_phi_times_w(self, w):
        v = game_value(w)
        # v = floor(phi*w)  <=>  (2v - w)^2 <= 5 w^2 < (2v - w + 2)^2
        assert (2 * v - w) ** 2 <= 5 * w * w < (2 * (v + 1) - w) ** 2


class TestForcingPlan:
    @pytest.mark.parametrize(
        "w,quotas", [(5, (3, 1, 0)), (3, (1, 1, 0)), (1, (0,)), (2, (1, 0))]
    )
    def test_examples(self, w, quotas):
        assert forcing_plan(w).quotas == quotas

    @given(st.integers(1, 400))
    @settings(max_examples=80, deadline=None)
    def test_plan_satisfies_system(self, w):
        plan = forcing_plan(w)
        assert plan.satisfies_system()
        assert plan.extra == game_value(w) - w

    @pytest.mark.parametrize("w", range(1, 30))
    def test_leading_quota_is_extremal(self, w):
        assert forcing_plan(w).extra == max_extra_chains(w)


def drive(spoiler, policy, seed=0):
    """Play a strategy against a reply policy under full validation."""
    order = SemiOrder()
    partition = ChainPartition()
    last = None
    moves = []
    while (move := spoiler.next(last)) is not None:
        p = order.add_point(move.down, move.up)
        moves.append(move)
        chain = partition.assign(order, p, policy(order, partition, p, seed))
        last = (p, chain)
    return order, partition, moves


def always_new(order, partition, p, seed=0):
    return None


def last_valid(order, partition, p, seed=0):
    chains = partition.valid_chains(order, p)
    return chains[-1] if chains else None


POLICIES = [first_fit_choose, always_new, last_valid, random_valid_choose]


class TestGoldenSpoiler:
    def test_degenerate_width_one(self):
        spoiler = GoldenSpoiler(1)
        move = spoiler.next(None)
        assert move.down == () and move.up == ()
        assert spoiler.next((0, 0)) is None

    def test_width_two_trace_against_first_fit(self):
        order, partition, moves = drive(GoldenSpoiler(2), first_fit_choose)
        assert [m.down for m in moves] == [(), (), (0, 1), (0,)]
        assert partition.chain_count == 3

    def test_width_two_any_reply_ends_the_path(self):
        order, partition, moves = drive(GoldenSpoiler(2), always_new)
        assert moves[2].down == (0, 1)
        assert len(moves) == 4
        assert partition.chain_count >= 3

    def test_width_three_phase_zero_is_empty(self):
        # quotas (1, 1, 0): no paths and an empty bundle before phase one
        order, partition, moves = drive(GoldenSpoiler(3), first_fit_choose)
        assert moves[3].down == (0, 1, 2)  # first path point sits right above the base
        assert partition.chain_count >= 4

    @pytest.mark.parametrize("w", range(1, 13))
    @pytest.mark.parametrize("policy", POLICIES)
    def test_forces_extra_chains_and_exact_width(self, w, policy):
        order, partition, _ = drive(GoldenSpoiler(w), policy)
        plan = forcing_plan(w)
        assert partition.chain_count >= w + plan.extra == game_value(w)
        assert order.width() == w
        assert brute_forbidden(order) is None

    @pytest.mark.parametrize("seed", range(25))
    def test_forces_bound_against_seeded_random(self, seed):
        w = 3 + seed % 5
        order, partition, _ = drive(
            GoldenSpoiler(w), random_valid_choose, seed=seed
        )
        assert partition.chain_count >= game_value(w)

    def test_moves_are_up_growing(self):
        _, _, moves = drive(GoldenSpoiler(6), first_fit_choose)
        assert all(m.up == () for m in moves)

    def test_inconsistent_reply_rejected(self):
        spoiler = GoldenSpoiler(2)
        spoiler.next(None)
        with pytest.raises(InconsistentReply):
            spoiler.next((17, 0))
        with pytest.raises(InconsistentReply):
            GoldenSpoiler(2).next((0, 0))


class TestDoublerSpoiler:
    def test_width_one(self):
        spoiler = DoublerSpoiler(1)
        first = spoiler.next(None)
        assert first.down == ()
        second = spoiler.next((0, 0))
        assert second.down == (0,)
        # either reply reaches 2w-1 = 1 chain, so the game ends
        assert spoiler.next((1, 1)) is None

    def test_width_two_against_first_fit(self):
        order, partition, moves = drive(DoublerSpoiler(2), first_fit_choose)
        assert partition.chain_count == 3
        # the middle point lies above low point 0 and below high point 3
        assert moves[4].down == (0,) and moves[4].up == (3,)

    def test_early_exit_on_fresh_chains(self):
        order, partition, moves = drive(DoublerSpoiler(2), always_new)
        assert len(moves) == 4  # no middle points needed
        assert partition.chain_count == 4 >= 3

    @pytest.mark.parametrize("w", range(1, 9))
    @pytest.mark.parametrize("policy", POLICIES)
    def test_forces_double_bound(self, w, policy):
        order, partition, _ = drive(DoublerSpoiler(w), policy)
        assert partition.chain_count >= 2 * w - 1
        assert order.width() == w
        assert brute_forbidden(order) is None


class TestRandomGenerators:
    def test_single_point(self):
        gen = RandomUpGrowingSpoiler(w=3, seed=1, n_target=1)
        move = gen.next(None)
        assert move.down == () and move.up == ()
        assert gen.next(None) is None

    @pytest.mark.parametrize("seed", range(40))
    def test_up_growing_replays_cleanly(self, seed):
        gen = RandomUpGrowingSpoiler(w=4, seed=seed, n_target=50)
        order = SemiOrder()
        while (move := gen.next(None)) is not None:
            assert move.up == ()
            p = order.add_point(move.down, move.up)
            assert p in order.maximal_points()
        assert order.width() <= 4

    @pytest.mark.parametrize("seed", range(40))
    def test_general_replays_cleanly_under_cap(self, seed):
        gen = RandomGeneralSpoiler(w=4, seed=seed, n_target=40)
        order = SemiOrder()
        while (move := gen.next(None)) is not None:
            order.add_point(move.down, move.up)
        assert order.width() <= 4
        assert order.size == 40

    def test_deterministic_per_seed(self):
        runs = []
        for _ in range(2):
            gen = RandomUpGrowingSpoiler(w=5, seed=99, n_target=30)
            moves = []
            while (move := gen.next(None)) is not None:
                moves.append(move)
            runs.append(moves)
        assert runs[0] == runs[1]

    def test_width_cap_is_hit(self):
        # an all-equal-endpoint prefix stops growing sideways at the cap
        gen = RandomUpGrowingSpoiler(w=2, seed=0, n_target=40)
        order = SemiOrder()
        while (move := gen.next(None)) is not None:
            order.add_point(move.down, move.up)
        assert order.width() == 2
