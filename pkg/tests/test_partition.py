"""Chain partitions and the on-line decision rules."""

import pytest

from semichain import SemiOrder, game_value
from semichain.errors import InvalidChain, NotMaximal
from semichain.partition import (
    ChainPartition,
    alg_choose,
    first_fit_choose,
    random_greedy_choose,
    random_valid_choose,
    valid_chains,
)

from conftest import build_random_order, fan_with_partition
from semichain.spoiler import RandomGeneralSpoiler, RandomUpGrowingSpoiler


class TestValidChains:
    def test_fan_state(self):
        order, partition = fan_with_partition()
        assert valid_chains(order, partition, 4) == [1, 2]

    def test_empty_partition(self):
        order = SemiOrder()
        order.add_point()
        assert valid_chains(order, ChainPartition(), 0) == []

    def test_point_above_everything(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        partition.assign(order, 1, None)
        order.add_point(down=[0, 1])
        assert valid_chains(order, partition, 2) == [0, 1]


class TestAlgChoose:
    def test_fan_state_prefers_smaller_up_set(self):
        order, partition = fan_with_partition()
        # top of chain 2 has an empty up-set, top of chain 1 is below point 3
        assert alg_choose(order, partition, 4) == 2

    def test_new_when_no_valid(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        assert alg_choose(order, partition, 1) is None

    def test_tie_breaks_to_smallest_chain_id(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        partition.assign(order, 1, None)
        order.add_point(down=[0, 1])
        # both tops have equal up-sets
        assert alg_choose(order, partition, 2) == 0

    def test_rejects_non_maximal(self):
        order2 = SemiOrder()
        order2.add_point()
        order2.add_point(down=[0])
        order2.add_point(down=[0], up=[1])
        partition = ChainPartition()
        partition.assign(order2, 0, None)
        partition.assign(order2, 1, 0)
        with pytest.raises(NotMaximal):
            alg_choose(order2, partition, 2)


def test_middle_insert_between_incomparable_points_rejected():
    order = SemiOrder()
    order.add_point()
    order.add_point()
    from semichain.errors import TwoPlusTwo

    # 0 < new < 1 would force 0 < 1, which does not hold
    with pytest.raises(TwoPlusTwo):
        order.add_point(down=[0], up=[1])


class TestFirstFit:
    def test_fan_state(self):
        order, partition = fan_with_partition()
        assert first_fit_choose(order, partition, 4) == 1

    def test_new_when_forced(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        assert first_fit_choose(order, partition, 1) is None

    def test_smallest_id_when_all_valid(self):
        order = SemiOrder()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        order.add_point(down=[0])
        assert first_fit_choose(order, partition, 1) == 0


class TestRandomChoosers:
    def test_membership_and_determinism(self):
        order, partition = fan_with_partition()
        seen = set()
        for seed in range(40):
            choice = random_valid_choose(order, partition, 4, seed)
            assert choice in (1, 2, None)
            again = random_valid_choose(order, partition, 4, seed)
            assert choice == again
            seen.add(choice)
        assert seen == {1, 2, None}

    def test_no_valid_chain_means_new(self):
        order = SemiOrder()
        order.add_point()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        assert random_valid_choose(order, partition, 1, seed=7) is None

    def test_greedy_variant_never_opens_early(self):
        order, partition = fan_with_partition()
        for seed in range(40):
            assert random_greedy_choose(order, partition, 4, seed) in (1, 2)


class TestAssign:
    def test_first_point_creates_chain_zero(self):
        order = SemiOrder()
        order.add_point()
        partition = ChainPartition()
        assert partition.assign(order, 0, None) == 0
        assert partition.chains == [[0]]

    def test_fan_extension(self):
        order, partition = fan_with_partition()
        partition.assign(order, 4, 2)
        assert partition.chains[2] == [2, 4]

    def test_invalid_chain_rejected(self):
        order, partition = fan_with_partition()
        with pytest.raises(InvalidChain):
            partition.assign(order, 4, 0)  # 3 and 4 are incomparable
        with pytest.raises(InvalidChain):
            partition.assign(order, 4, 17)

    def test_general_mode_orders_chain_members(self):
        order = SemiOrder()
        order.add_point()
        order.add_point(down=[0])
        partition = ChainPartition()
        partition.assign(order, 0, None)
        partition.assign(order, 1, 0)
        order.add_point(down=[0], up=[1])
        partition.assign(order, 2, 0)
        assert partition.chains[0] == [0, 2, 1]

    def test_unassign_last_round_trips(self):
        order, partition = fan_with_partition()
        partition.assign(order, 4, None)
        partition.unassign_last()
        assert partition.chain_count == 3
        assert 4 not in partition.assignment


class TestNeighbors:
    def test_singleton(self):
        order = SemiOrder()
        order.add_point()
        partition = ChainPartition()
        partition.assign(order, 0, None)
        assert partition.predecessor(0) is None
        assert partition.successor(0) is None

    def test_two_chain(self):
        order, partition = fan_with_partition()
        assert partition.predecessor(3) == 0
        assert partition.successor(0) == 3
        assert partition.successor(3) is None


class TestBounds:
    @pytest.mark.parametrize("seed", range(15))
    def test_greedy_uses_at_most_double_width(self, seed):
        """New chain only when forced caps any greedy rule at 2w-1."""
        for chooser in (first_fit_choose, random_greedy_choose):
            gen = RandomGeneralSpoiler(w=5, seed=seed, n_target=60)
            order = SemiOrder()
            partition = ChainPartition()
            while (move := gen.next(None)) is not None:
                p = order.add_point(move.down, move.up)
                partition.assign(order, p, chooser(order, partition, p, seed))
            assert partition.chain_count <= 2 * order.width() - 1

    @pytest.mark.parametrize("seed", range(15))
    def test_alg_meets_golden_ratio_bound(self, seed):
        gen = RandomUpGrowingSpoiler(w=7, seed=seed, n_target=70)
        order = SemiOrder()
        partition = ChainPartition()
        while (move := gen.next(None)) is not None:
            p = order.add_point(move.down, move.up)
            choice = alg_choose(order, partition, p)
            if choice is None and partition.valid_chains(order, p):
                pytest.fail("greedy rule opened a chain despite a valid one")
            partition.assign(order, p, choice)
        assert partition.chain_count <= game_value(order.width())
