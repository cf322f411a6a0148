"""On-line chain partitions and the decision rules that build them.

A chain choice is an ``int`` (existing chain id) or ``None`` (open a new
chain).  Decision functions are pure in (visible prefix, seed), which makes
transcripts replay-deterministic.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .errors import InvalidChain, NotMaximal
from .order import SemiOrder

NEW_CHAIN = None

ChooseFn = Callable[[SemiOrder, "ChainPartition", int, int], Optional[int]]


class ChainPartition:
    """Chains of a growing partition; members kept in increasing order."""

    def __init__(self):
        self.chains: list[list[int]] = []
        self.chain_masks: list[int] = []
        self.assignment: dict[int, int] = {}
        self._undo: list[tuple[int, int, bool, int]] = []

    @classmethod
    def from_chains(cls, chains: list[list[int]]) -> "ChainPartition":
        part = cls()
        for chain in chains:
            cid = len(part.chains)
            part.chains.append(list(chain))
            mask = 0
            for p in chain:
                mask |= 1 << p
                part.assignment[p] = cid
            part.chain_masks.append(mask)
        return part

    @property
    def chain_count(self) -> int:
        return len(self.chains)

    def chain_of(self, p: int) -> int:
        return self.assignment[p]

    def top(self, c: int) -> int:
        return self.chains[c][-1]

    def bottom(self, c: int) -> int:
        return self.chains[c][0]

    def tops(self) -> list[int]:
        return [chain[-1] for chain in self.chains]

    def predecessor(self, p: int) -> Optional[int]:
        chain = self.chains[self.assignment[p]]
        i = chain.index(p)
        return chain[i - 1] if i > 0 else None

    def successor(self, p: int) -> Optional[int]:
        chain = self.chains[self.assignment[p]]
        i = chain.index(p)
        return chain[i + 1] if i + 1 < len(chain) else None

    def clone(self) -> "ChainPartition":
        other = ChainPartition()
        other.chains = [c[:] for c in self.chains]
        other.chain_masks = self.chain_masks[:]
        other.assignment = dict(self.assignment)
        other._undo = []
        return other

    def is_valid_chain(self, order: SemiOrder, p: int, c: int) -> bool:
        """A chain is valid for p iff every member is comparable to p."""
        comparable = order.down_mask(p) | order.up_mask(p)
        return self.chain_masks[c] & ~comparable == 0

    def valid_chains(self, order: SemiOrder, p: int) -> list[int]:
        return [c for c in range(len(self.chains)) if self.is_valid_chain(order, p, c)]

    def assign(self, order: SemiOrder, p: int, choice: Optional[int]) -> int:
        """Irrevocably place p; returns the materialized chain id."""
        if p in self.assignment:
            raise ValueError(f"point {p} already assigned")
        if choice is None:
            cid = len(self.chains)
            self.chains.append([p])
            self.chain_masks.append(1 << p)
            self.assignment[p] = cid
            self._undo.append((p, cid, True, 0))
            return cid
        if not 0 <= choice < len(self.chains):
            raise InvalidChain(f"chain {choice} does not exist")
        if not self.is_valid_chain(order, p, choice):
            raise InvalidChain(f"point {p} does not extend chain {choice}")
        below = self.chain_masks[choice] & order.down_mask(p)
        pos = below.bit_count()
        self.chains[choice].insert(pos, p)
        self.chain_masks[choice] |= 1 << p
        self.assignment[p] = choice
        self._undo.append((p, choice, False, pos))
        return choice

    def unassign_last(self) -> None:
        p, cid, created, pos = self._undo.pop()
        if created:
            self.chains.pop()
            self.chain_masks.pop()
        else:
            self.chains[cid].pop(pos)
            self.chain_masks[cid] &= ~(1 << p)
        del self.assignment[p]


def valid_chains(order: SemiOrder, partition: ChainPartition, p: int) -> list[int]:
    return partition.valid_chains(order, p)


def alg_choose(
    order: SemiOrder, partition: ChainPartition, p: int, seed: int = 0
) -> Optional[int]:
    """Greedy rule for up-growing play: extend a valid chain whose top has
    the smallest up-set, opening a new chain only when none is valid.

    Up-sets of valid tops are linearly ordered by inclusion, so the minimum
    is a size comparison; equal up-sets tie-break to the smallest chain id.
    The new point enlarges every valid top's up-set by exactly itself, so
    comparing post-insertion sizes is equivalent to comparing them in the
    prefix order the point arrived into.
    """
    if order.up_mask(p):
        raise NotMaximal(f"point {p} is not maximal")
    down = order.down_mask(p)
    best: Optional[int] = None
    best_size = -1
    for c, chain in enumerate(partition.chains):
        t = chain[-1]
        if down >> t & 1:
            s = order.up_size(t)
            if best is None or s < best_size:
                best, best_size = c, s
    return best


def first_fit_choose(
    order: SemiOrder, partition: ChainPartition, p: int, seed: int = 0
) -> Optional[int]:
    """Smallest valid chain id, else a new chain.  Works in both modes."""
    for c in range(partition.chain_count):
        if partition.is_valid_chain(order, p, c):
            return c
    return NEW_CHAIN


def _decision_rng(seed: int, p: int) -> random.Random:
    mixed = ((seed + 1) * 0x9E3779B97F4A7C15 + (p + 1) * 0xBF58476D1CE4E5B9) % (1 << 64)
    return random.Random(mixed)


def random_valid_choose(
    order: SemiOrder, partition: ChainPartition, p: int, seed: int = 0
) -> Optional[int]:
    """Uniform over valid chains plus a new chain, per-decision seeded."""
    options: list[Optional[int]] = list(partition.valid_chains(order, p))
    options.append(NEW_CHAIN)
    return _decision_rng(seed, p).choice(options)


def random_greedy_choose(
    order: SemiOrder, partition: ChainPartition, p: int, seed: int = 0
) -> Optional[int]:
    """Uniform over valid chains; a new chain only when forced."""
    options = partition.valid_chains(order, p)
    if not options:
        return NEW_CHAIN
    return _decision_rng(seed, p).choice(options)


#: name -> (decision function, set of supported modes)
ALGORITHMS: dict[str, tuple[ChooseFn, frozenset[str]]] = {
    "alg": (alg_choose, frozenset({"up_growing"})),
    "first-fit": (first_fit_choose, frozenset({"up_growing", "general"})),
    "random": (random_valid_choose, frozenset({"up_growing", "general"})),
    "random-greedy": (random_greedy_choose, frozenset({"up_growing", "general"})),
}
