"""Independent brute-force ground truth.

Everything here is deliberately dumb and slow: pattern scans over all
tuples, antichain search by subset enumeration, matching-based chain
covers, exhaustive game-tree traversal.  None of it shares logic with the
incremental validation core, so disagreement between the two pinpoints a
bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BudgetExceeded
from .order import SemiOrder
from .partition import ChainPartition
from .spoiler import make_spoiler

# --- raw relation container -------------------------------------------------


class RawOrder:
    """Unvalidated relation storage with the same mask accessors as
    :class:`SemiOrder`; used to inspect candidate structures that the
    validating engine may have (rightly) refused to build."""

    def __init__(self, down_masks: list[int], up_masks: list[int]):
        self._down = down_masks
        self._up = up_masks

    @property
    def size(self) -> int:
        return len(self._down)

    def down_mask(self, p: int) -> int:
        return self._down[p]

    def up_mask(self, p: int) -> int:
        return self._up[p]

    @classmethod
    def from_order(cls, order: SemiOrder) -> "RawOrder":
        n = order.size
        return cls(
            [order.down_mask(p) for p in range(n)],
            [order.up_mask(p) for p in range(n)],
        )

    @classmethod
    def candidate(
        cls, order: SemiOrder, down: Iterable[int], up: Iterable[int]
    ) -> "RawOrder":
        """The structure that inserting (down, up) into ``order`` would create."""
        raw = cls.from_order(order)
        n = order.size
        dmask = 0
        for i in down:
            dmask |= 1 << i
        umask = 0
        for i in up:
            umask |= 1 << i
        newbit = 1 << n
        for q in range(n):
            if dmask >> q & 1:
                raw._up[q] |= newbit
            if umask >> q & 1:
                raw._down[q] |= newbit
        raw._down.append(dmask)
        raw._up.append(umask)
        return raw


def is_transitively_consistent(raw: RawOrder) -> bool:
    """True iff the raw relation is an irreflexive transitive order with
    mutually inverse down/up sets."""
    n = raw.size
    for p in range(n):
        d = raw.down_mask(p)
        u = raw.up_mask(p)
        if (d | u) >> p & 1 or d & u:
            return False
        for j in _iter_bits(d):
            if raw.up_mask(j) >> p & 1 == 0:
                return False
            if raw.down_mask(j) & ~d:
                return False
        for j in _iter_bits(u):
            if raw.down_mask(j) >> p & 1 == 0:
                return False
            if raw.up_mask(j) & ~u:
                return False
    return True


# --- forbidden patterns -------------------------------------------------------


@dataclass(frozen=True)
class PatternWitness:
    kind: str  # "two_plus_two" | "three_plus_one"
    points: tuple[int, int, int, int]


def brute_forbidden(order) -> Optional[PatternWitness]:
    """First forbidden four-point configuration in role-lexicographic order.

    Scans the two-incomparable-pairs pattern (a<b, c<d, a||d, c||b) before
    the chain-of-three-plus-isolated pattern (e<f<g, h || e,f,g); within
    each, witnesses come in lexicographic role order.
    """
    n = order.size
    up = [order.up_mask(p) for p in range(n)]
    down = [order.down_mask(p) for p in range(n)]
    full = (1 << n) - 1
    inc = [full & ~(up[p] | down[p] | (1 << p)) for p in range(n)]

    for a in range(n):
        ua = up[a]
        for b in _iter_bits(ua):
            for c in range(n):
                if c == a:
                    continue
                # want d > c with a || d and c || b
                if inc[c] >> b & 1 == 0:
                    continue
                cand = up[c] & inc[a]
                if cand:
                    d = (cand & -cand).bit_length() - 1
                    return PatternWitness("two_plus_two", (a, b, c, d))

    for e in range(n):
        for f in _iter_bits(up[e]):
            for g in _iter_bits(up[f]):
                cand = inc[e] & inc[f] & inc[g]
                if cand:
                    h = (cand & -cand).bit_length() - 1
                    return PatternWitness("three_plus_one", (e, f, g, h))
    return None


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def brute_width(order) -> int:
    """Maximum antichain size by branch-and-bound subset enumeration."""
    n = order.size
    if n == 0:
        return 0
    comp = [order.down_mask(p) | order.up_mask(p) for p in range(n)]
    best = 0

    def rec(cand: int, count: int) -> None:
        nonlocal best
        if count + cand.bit_count() <= best:
            return
        if not cand:
            best = max(best, count)
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rec(cand & ~(low | comp[v]), count + 1)
        rec(cand ^ low, count)

    rec((1 << n) - 1, 0)
    return best


# --- minimum chain cover -------------------------------------------------------


def min_chain_partition(order: SemiOrder) -> ChainPartition:
    """Minimum chain cover via maximum bipartite matching on the relation.

    The cover size equals the width; the returned partition supplies the
    within-chain predecessor/successor maps the diagnostics need.
    """
    n = order.size
    match_pred = [-1] * n  # point -> matched predecessor
    adj = [sorted(_iter_bits(order.up_mask(u))) for u in range(n)]

    def try_augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_pred[v] == -1 or try_augment(match_pred[v], seen):
                    match_pred[v] = u
                    return True
        return False

    for u in range(n):
        try_augment(u, [False] * n)

    nxt: dict[int, int] = {}
    for v, u in enumerate(match_pred):
        if u != -1:
            nxt[u] = v
    starts = [p for p in range(n) if match_pred[p] == -1]
    chains = []
    for s in sorted(starts):
        chain = [s]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    return ChainPartition.from_chains(chains)


# --- extremal quota search ------------------------------------------------------


def max_extra_chains(w: int) -> int:
    """Exact maximum leading term over all non-increasing integer quota
    vectors satisfying prefix + 2*q_j - q_{j+1} <= w, by depth-first search
    with monotone pruning."""
    if w < 1:
        raise ValueError("width must be >= 1")
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def feasible(prefix: int, q: int) -> bool:
        # prune: even q_next = q leaves prefix + 2q - q_next = prefix + q
        if prefix + q > w:
            return False
        if prefix + 2 * q <= w:  # close the vector with q_next = 0
            return True
        lo = max(1, prefix + 2 * q - w)
        for nxt in range(q, lo - 1, -1):
            if feasible(prefix + q, nxt):
                return True
        return False

    for q0 in range(w, 0, -1):
        if feasible(0, q0):
            return q0
    return 0


# --- exhaustive adversary ---------------------------------------------------------


def exhaustive_adversary(
    spoiler_name: str, w: int, mode: str = "up_growing", node_cap: int = 10**8
) -> int:
    """Minimum chains over all legal reply sequences against a strategy.

    Depth-first traversal of the reply tree, branching over every valid
    chain plus a new one at each assignment, with transposition memoization.
    In up-growing play states collapse on (order, chain tops); in general
    play chain composition matters and the key keeps whole chains.
    """
    order = SemiOrder()
    partition = ChainPartition()
    spoiler = make_spoiler(spoiler_name, mode, w, seed=0)
    memo: dict = {}
    up_growing = mode == "up_growing"
    nodes = 0

    def partition_key():
        if up_growing:
            return frozenset(partition.tops())
        return tuple(sorted(tuple(c) for c in partition.chains))

    def search(spoiler_state, last) -> int:
        nonlocal nodes
        move = spoiler_state.next(last)
        if move is None:
            return 0
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded(f"node cap {node_cap} exceeded")
        p = order.add_point(move.down, move.up)
        key = (order.state_key(), partition_key(), spoiler_state.state_key())
        cached = memo.get(key)
        if cached is not None:
            order.remove_last()
            return cached
        best = None
        for choice in partition.valid_chains(order, p) + [None]:
            chain = partition.assign(order, p, choice)
            extra = (1 if choice is None else 0) + search(
                spoiler_state.clone(), (p, chain)
            )
            partition.unassign_last()
            if best is None or extra < best:
                best = extra
        order.remove_last()
        memo[key] = best
        return best

    return search(spoiler, None)


# --- transcript sanity -----------------------------------------------------------


def cover_bound_check(transcript) -> bool:
    """chains_used can never undercut the width of the final order."""
    from .arena import materialize

    order, _ = materialize(transcript)
    return transcript.chains_used >= order.width()
