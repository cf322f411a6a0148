"""Shared builders for the test suite."""

from __future__ import annotations

import random

import pytest

from semichain import GameConfig, SemiOrder, run_game
from semichain.order import IntervalRepresentation
from semichain.partition import ChainPartition
from semichain.spoiler import RandomGeneralSpoiler, RandomUpGrowingSpoiler


def build_random_order(
    seed: int, w: int = 5, n: int = 25, mode: str = "general", backend=None
) -> SemiOrder:
    if mode == "general":
        gen = RandomGeneralSpoiler(w=w, seed=seed, n_target=n)
    else:
        gen = RandomUpGrowingSpoiler(w=w, seed=seed, n_target=n)
    order = SemiOrder(backend=backend)
    while (move := gen.next(None)) is not None:
        order.add_point(move.down, move.up)
    return order


def random_candidate(rng: random.Random, order: SemiOrder):
    """Declared (down, up) sets of varying plausibility for one insertion."""
    n = order.size
    style = rng.randrange(4)
    if style == 0:  # arbitrary subsets, mostly junk
        down = {i for i in range(n) if rng.random() < 0.3}
        up = {i for i in range(n) if rng.random() < 0.2} - down
    elif style == 1:  # closures of random points on both sides
        down, up = set(), set()
        for _ in range(rng.randrange(3)):
            if n:
                s = rng.randrange(n)
                down |= {s} | order.down_set(s)
        for _ in range(rng.randrange(2)):
            if n:
                s = rng.randrange(n)
                up |= {s} | order.up_set(s)
        down, up = down - up, up - down
    elif style == 2:  # maximal insertion over a random down closure
        down, up = set(), set()
        for _ in range(rng.randrange(4)):
            if n:
                s = rng.randrange(n)
                down |= {s} | order.down_set(s)
    else:  # valid closure perturbed by one element
        down, up = set(), set()
        if n:
            s = rng.randrange(n)
            down = {s} | order.down_set(s)
            if down and rng.random() < 0.5:
                down.discard(rng.choice(sorted(down)))
            elif rng.random() < 0.5:
                down.add(rng.randrange(n))
    return sorted(down), sorted(up)


def build_fan_order() -> SemiOrder:
    """Three minimal points, one above the first two, one above all three."""
    order = SemiOrder()
    a = order.add_point()
    b = order.add_point()
    c = order.add_point()
    order.add_point(down=[a, b])
    order.add_point(down=[a, b, c])
    return order


def fan_with_partition() -> tuple[SemiOrder, ChainPartition]:
    """The fan order partitioned as [a, d], [b], [c]; e left unassigned."""
    order = build_fan_order()
    partition = ChainPartition()
    partition.assign(order, 0, None)
    partition.assign(order, 1, None)
    partition.assign(order, 2, None)
    partition.assign(order, 3, 0)
    return order, partition


def reconstruct(rep: IntervalRepresentation) -> list[list[bool]]:
    n = len(rep.left)
    return [[rep.less(p, q) for q in range(n)] for p in range(n)]


@pytest.fixture
def fan_order() -> SemiOrder:
    return build_fan_order()
