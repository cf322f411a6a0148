"""Adversary strategies for the chain partition game.

``game_value(w)`` is the exact value floor(phi * w) of the game on
up-growing semi-orders of width w, computed with integer square roots only.
The "golden" strategy forces that many chains in up-growing play, the
"doubler" strategy forces 2w-1 chains in general play, and "random"
generates width-capped instances for property sweeps.

A strategy object is advanced by alternating calls to ``next(last)`` where
``last`` is the referee's report of the opponent's reply ``(point, chain)``
to the previous move, or None before the first move.  ``next`` returns a
:class:`Present` or None once the strategy is done.  Strategies are
clonable mid-game; the exhaustive adversary search relies on that.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

from .errors import InconsistentReply


def game_value(w: int) -> int:
    """floor(phi * w) = (w + isqrt(5 w^2)) div 2, exactly."""
    if w < 1:
        raise ValueError("width must be >= 1")
    return (w + isqrt(5 * w * w)) // 2


def _shrink(z: int) -> int:
    """floor((phi - 1) * z) on exact integers."""
    return (isqrt(5 * z * z) - z) // 2


@dataclass(frozen=True)
class ForcingPlan:
    """Per-phase quota vector for the golden strategy.

    quotas = (q_0, ..., q_k, 0) is non-increasing with q_k > 0 (or the
    degenerate (0,)); phase j runs q_j - q_{j+1} forcing paths, and q_0 is
    the number of extra chains forced beyond w.  Every index satisfies
    q_0 + ... + q_{j-1} + 2*q_j - q_{j+1} <= w.
    """

    w: int
    quotas: tuple[int, ...]

    @property
    def extra(self) -> int:
        return self.quotas[0]

    @property
    def phase_count(self) -> int:
        return len(self.quotas) - 1

    @property
    def path_cap(self) -> int:
        # a forcing path climbs strictly down the bundle indices
        return len(self.quotas)

    def satisfies_system(self) -> bool:
        q = self.quotas
        if list(q) != sorted(q, reverse=True) or q[-1] != 0:
            return False
        prefix = 0
        for j in range(len(q) - 1):
            if prefix + 2 * q[j] - q[j + 1] > self.w:
                return False
            prefix += q[j]
        return True


def forcing_plan(w: int) -> ForcingPlan:
    """Greedy quota vector: q_{j+1} = floor((phi-1) * (w - q_0 - ... - q_j))."""
    if w < 1:
        raise ValueError("width must be >= 1")
    q0 = _shrink(w)
    if q0 == 0:
        return ForcingPlan(w, (0,))
    quotas = [q0]
    spent = q0
    while quotas[-1] > 0:
        nxt = _shrink(w - spent)
        quotas.append(nxt)
        spent += nxt
    return ForcingPlan(w, tuple(quotas))


@dataclass(frozen=True)
class Present:
    down: tuple[int, ...]
    up: tuple[int, ...] = ()


class _TopsMirror:
    """Tracks the opponent's chain tops from the assignment stream."""

    __slots__ = ("tops",)

    def __init__(self):
        self.tops: dict[int, int] = {}  # chain id -> current top point

    def record(self, point: int, chain: int) -> int | None:
        """Returns the covered previous top, or None for a fresh chain."""
        prev = self.tops.get(chain)
        self.tops[chain] = point
        return prev

    def clone(self) -> "_TopsMirror":
        other = _TopsMirror.__new__(_TopsMirror)
        other.tops = dict(self.tops)
        return other

    def key(self) -> tuple:
        return tuple(sorted(self.tops.items()))


class _ReplyTracking:
    """Shared reply-consumption plumbing for adaptive strategies."""

    def __init__(self):
        self.mirror = _TopsMirror()
        self.expected_reply: int | None = None
        self.next_id = 0

    def _emit_id(self) -> int:
        pid = self.next_id
        self.expected_reply = pid
        self.next_id += 1
        return pid

    def _consume(self, last: tuple[int, int] | None) -> int | None:
        if self.expected_reply is None:
            if last is not None:
                raise InconsistentReply("no reply was expected")
            return None
        if last is None or last[0] != self.expected_reply:
            raise InconsistentReply(
                f"expected a reply for point {self.expected_reply}, got {last!r}"
            )
        self.expected_reply = None
        return self.mirror.record(*last)


class GoldenSpoiler(_ReplyTracking):
    """Adaptive strategy forcing game_value(w) chains in up-growing play.

    Play starts with a base antichain of w points, then runs phases over
    the quota vector.  Phase j grows its quota of forcing paths above the
    base and the bundles shown so far; a path ends when the opponent opens
    a new chain or lands on a chain topped by a base point (a skip chain,
    whose bottom is remembered), and otherwise marks the covered bundle
    point as dead and continues above one bundle fewer plus the dead set.
    After the paths the phase emits its bundle: points sharing a down-set
    inside the base that packs the skip bottoms and the previous bundle's
    down-set, topped up with the lowest-id base points.
    """

    name = "golden"
    mode = "up_growing"

    def __init__(self, w: int, seed: int = 0):
        super().__init__()
        self.w = w
        self.plan = forcing_plan(w)
        self.stage = "base"  # base -> phases -> done
        self.base: list[int] = []
        self.phase = 0
        self.paths_left = 0
        self.in_path = False
        self.path_len = 0
        self.bundles: list[list[int]] = []  # emitted bundles, 0-indexed
        self.bundle_down: list[frozenset[int]] = [frozenset()]
        self.dead: list[set[int]] = [set()]  # index aligned with bundle_down
        self.skip_bottoms: set[int] = set()
        self.emit_left = 0
        self.pending_down: frozenset[int] = frozenset()
        self.point_bundle: dict[int, int] = {}  # point -> 1-based bundle index

    def clone(self) -> "GoldenSpoiler":
        other = GoldenSpoiler.__new__(GoldenSpoiler)
        other.mirror = self.mirror.clone()
        other.expected_reply = self.expected_reply
        other.next_id = self.next_id
        other.w = self.w
        other.plan = self.plan
        other.stage = self.stage
        other.base = self.base[:]
        other.phase = self.phase
        other.paths_left = self.paths_left
        other.in_path = self.in_path
        other.path_len = self.path_len
        other.bundles = [b[:] for b in self.bundles]
        other.bundle_down = self.bundle_down[:]
        other.dead = [set(d) for d in self.dead]
        other.skip_bottoms = set(self.skip_bottoms)
        other.emit_left = self.emit_left
        other.pending_down = self.pending_down
        other.point_bundle = dict(self.point_bundle)
        return other

    def state_key(self) -> tuple:
        return (
            self.stage,
            self.next_id,
            self.phase,
            self.paths_left,
            self.in_path,
            self.path_len,
            tuple(tuple(sorted(d)) for d in self.dead),
            tuple(sorted(self.skip_bottoms)),
            self.emit_left,
            tuple(sorted(self.pending_down)),
            self.mirror.key(),
        )

    def _quota(self, j: int) -> int:
        q = self.plan.quotas
        return q[j] if j < len(q) else 0

    def _present(self, down) -> Present:
        self._emit_id()
        return Present(tuple(sorted(down)))

    def _start_phase(self, j: int) -> Present | None:
        self.phase = j
        self.paths_left = self._quota(j) - self._quota(j + 1)
        self.in_path = False
        return self._next_in_phase()

    def _next_in_phase(self) -> Present | None:
        """Start the next forcing path, or fall through to the bundle."""
        if self.paths_left > 0:
            self.paths_left -= 1
            self.in_path = True
            self.path_len = 1
            down = set(self.base)
            for ids in self.bundles:
                down.update(ids)
            return self._present(down)
        self._prepare_bundle()
        return self._emit_bundle_or_advance()

    def _prepare_bundle(self) -> None:
        j = self.phase
        size = self._quota(j) - self._quota(j + 1)
        target = self.plan.extra - self._quota(j + 1)
        down = set(self.skip_bottoms) | set(self.bundle_down[-1])
        for a in self.base:  # lowest-id fill from the base antichain
            if len(down) >= target:
                break
            if a not in down:
                down.add(a)
        assert len(down) == target, "bundle down-set arithmetic broke"
        self.pending_down = frozenset(down)
        self.emit_left = size
        self.bundles.append([])
        self.bundle_down.append(self.pending_down)
        self.dead.append(set())

    def _emit_bundle_or_advance(self) -> Present | None:
        if self.emit_left > 0:
            self.emit_left -= 1
            move = self._present(self.pending_down)
            pid = self.expected_reply
            self.bundles[-1].append(pid)
            self.point_bundle[pid] = len(self.bundles)
            return move
        if self.phase + 1 < self.plan.phase_count:
            return self._start_phase(self.phase + 1)
        self.stage = "done"
        return None

    def next(self, last: tuple[int, int] | None) -> Present | None:
        prev_top = self._consume(last)

        if self.stage == "base":
            if len(self.base) < self.w:
                self.base.append(self.next_id)
                return self._present(())
            if self.plan.extra == 0:
                self.stage = "done"
                return None
            self.stage = "phases"
            return self._start_phase(0)

        if self.stage == "phases":
            if self.in_path:
                if prev_top is None:
                    self.in_path = False  # a fresh chain ends the path
                elif prev_top in self.point_bundle:
                    s = self.point_bundle[prev_top]
                    self.dead[s].add(prev_top)
                    self.path_len += 1
                    if self.path_len > self.plan.path_cap:
                        raise AssertionError("forcing path exceeded its cap")
                    down = set(self.base)
                    for ids in self.bundles[: s - 1]:
                        down.update(ids)
                    down.update(self.dead[s])
                    return self._present(down)
                elif prev_top in self.base:
                    self.skip_bottoms.add(prev_top)
                    self.in_path = False  # skip chain ends the path
                else:
                    raise AssertionError(
                        "reply landed on a chain top the strategy cannot reach"
                    )
                return self._next_in_phase()
            return self._emit_bundle_or_advance()

        if last is not None:
            raise InconsistentReply("strategy already finished")
        return None


class DoublerSpoiler(_ReplyTracking):
    """General-mode strategy forcing 2w-1 chains.

    Shows a w-antichain, then a second w-antichain entirely above it.  If
    fewer than 2w-1 chains are in use, some chains carry one point of each
    antichain; for those shared chains, taken in id order, it then shows
    middle points nested between growing prefixes of the low points and
    shrinking suffixes of the high points, each incomparable to everything
    else and hence to every used chain.
    """

    name = "doubler"
    mode = "general"

    def __init__(self, w: int, seed: int = 0):
        super().__init__()
        self.w = w
        self.stage = "low"  # low -> high -> middles -> done
        self.low: list[int] = []
        self.high: list[int] = []
        self.chain_points: dict[int, list[int]] = {}
        self.pairs: list[tuple[int, int]] = []
        self.mid_done = 0

    def clone(self) -> "DoublerSpoiler":
        other = DoublerSpoiler.__new__(DoublerSpoiler)
        other.mirror = self.mirror.clone()
        other.expected_reply = self.expected_reply
        other.next_id = self.next_id
        other.w = self.w
        other.stage = self.stage
        other.low = self.low[:]
        other.high = self.high[:]
        other.chain_points = {c: ps[:] for c, ps in self.chain_points.items()}
        other.pairs = self.pairs[:]
        other.mid_done = self.mid_done
        return other

    def state_key(self) -> tuple:
        return (
            self.stage,
            self.next_id,
            tuple(sorted((c, tuple(ps)) for c, ps in self.chain_points.items())),
            tuple(self.pairs),
            self.mid_done,
        )

    def _present(self, down, up=()) -> Present:
        self._emit_id()
        return Present(tuple(sorted(down)), tuple(sorted(up)))

    def next(self, last: tuple[int, int] | None) -> Present | None:
        if last is not None:
            point, chain = last
        self._consume(last)
        if last is not None:
            self.chain_points.setdefault(chain, []).append(point)

        if self.stage == "low":
            if len(self.low) < self.w:
                self.low.append(self.next_id)
                return self._present(())
            self.stage = "high"

        if self.stage == "high":
            if len(self.high) < self.w:
                self.high.append(self.next_id)
                return self._present(self.low)
            if len(self.chain_points) >= 2 * self.w - 1:
                self.stage = "done"
                return None
            low_set = set(self.low)
            high_set = set(self.high)
            for c in sorted(self.chain_points):
                pts = self.chain_points[c]
                a = [p for p in pts if p in low_set]
                b = [p for p in pts if p in high_set]
                if a and b:
                    self.pairs.append((a[0], b[0]))
            assert len(self.pairs) >= 2, "fewer shared chains than the count implies"
            self.stage = "middles"

        if self.stage == "middles":
            if self.mid_done < len(self.pairs) - 1:
                self.mid_done += 1
                i = self.mid_done
                down = [a for a, _ in self.pairs[:i]]
                up = [b for _, b in self.pairs[i:]]
                return self._present(down, up)
            self.stage = "done"
            return None

        return None


class RandomUpGrowingSpoiler:
    """Seeded width-capped instance generator for up-growing play.

    Left endpoints of unit intervals walk right on the integer grid, so
    each new point is maximal; a candidate endpoint is resampled while the
    set of intervals containing it would exceed the width cap.  Replies are
    ignored: the presentation is non-adaptive and deterministic per seed.
    """

    name = "random"
    mode = "up_growing"

    def __init__(self, w: int, seed: int = 0, n_target: int | None = None):
        self.w = w
        self.n_target = 8 * w if n_target is None else n_target
        self.rng = random.Random(seed)
        self.lefts: list[int] = []

    def clone(self) -> "RandomUpGrowingSpoiler":
        other = RandomUpGrowingSpoiler.__new__(RandomUpGrowingSpoiler)
        other.w = self.w
        other.n_target = self.n_target
        other.rng = random.Random()
        other.rng.setstate(self.rng.getstate())
        other.lefts = self.lefts[:]
        return other

    def state_key(self) -> tuple:
        return (len(self.lefts), tuple(self.lefts), self.rng.getstate()[1])

    def next(self, last: tuple[int, int] | None) -> Present | None:
        if len(self.lefts) >= self.n_target:
            return None
        base = self.lefts[-1] if self.lefts else 0
        while True:
            cand = base + self.rng.randint(0, 2)
            if sum(1 for l in self.lefts if l >= cand - 1) + 1 <= self.w:
                break
        down = tuple(i for i, l in enumerate(self.lefts) if l + 1 < cand)
        self.lefts.append(cand)
        return Present(down)


class RandomGeneralSpoiler:
    """Seeded width-capped generator presenting points in shuffled order."""

    name = "random"
    mode = "general"

    def __init__(self, w: int, seed: int = 0, n_target: int | None = None):
        self.w = w
        self.n_target = 8 * w if n_target is None else n_target
        rng = random.Random(seed)
        lefts: list[int] = []
        for _ in range(self.n_target):
            base = lefts[-1] if lefts else 0
            while True:
                cand = base + rng.randint(0, 2)
                if sum(1 for l in lefts if l >= cand - 1) + 1 <= self.w:
                    break
            lefts.append(cand)
        self.lefts = lefts
        self.sequence = list(range(self.n_target))
        rng.shuffle(self.sequence)
        self.step = 0
        self.presented: list[int] = []  # pregenerated index per presented id

    def clone(self) -> "RandomGeneralSpoiler":
        other = RandomGeneralSpoiler.__new__(RandomGeneralSpoiler)
        other.w = self.w
        other.n_target = self.n_target
        other.lefts = self.lefts
        other.sequence = self.sequence
        other.step = self.step
        other.presented = self.presented[:]
        return other

    def state_key(self) -> tuple:
        return (self.step,)

    def next(self, last: tuple[int, int] | None) -> Present | None:
        if self.step >= self.n_target:
            return None
        idx = self.sequence[self.step]
        self.step += 1
        l_new = self.lefts[idx]
        down = tuple(
            pid
            for pid, old in enumerate(self.presented)
            if self.lefts[old] + 1 < l_new
        )
        up = tuple(
            pid
            for pid, old in enumerate(self.presented)
            if l_new + 1 < self.lefts[old]
        )
        self.presented.append(idx)
        return Present(down, up)


SPOILER_NAMES = ("golden", "doubler", "random")


def make_spoiler(name: str, mode: str, w: int, seed: int, n_target: int | None = None):
    """Instantiate a named strategy for the given mode.

    "random" adapts to the mode; the forcing strategies are mode-specific
    and the caller is expected to have checked compatibility.
    """
    if name == "golden":
        return GoldenSpoiler(w, seed)
    if name == "doubler":
        return DoublerSpoiler(w, seed)
    if name == "random":
        if mode == "up_growing":
            return RandomUpGrowingSpoiler(w, seed, n_target)
        return RandomGeneralSpoiler(w, seed, n_target)
    raise KeyError(name)


SPOILER_MODES = {
    "golden": frozenset({"up_growing"}),
    "doubler": frozenset({"general"}),
    "random": frozenset({"up_growing", "general"}),
}
