"""Incremental semi-order data model.

A :class:`SemiOrder` grows one point at a time.  Each arriving point
declares its full strict down-set and up-set; the engine validates the
declaration (it never infers closure, so a strategy emitting sloppy sets is
caught immediately) and rejects anything that is not a semi-order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import _codes
from .backend import SemiOrderCore, core_class
from .errors import (
    DownUpOverlap,
    InternalInfeasible,
    NotDownwardClosed,
    NotUpwardClosed,
    ThreePlusOne,
    TwoPlusTwo,
)

_ERROR_BY_CODE = {
    _codes.DOWN_UP_OVERLAP: DownUpOverlap,
    _codes.NOT_DOWNWARD_CLOSED: NotDownwardClosed,
    _codes.NOT_UPWARD_CLOSED: NotUpwardClosed,
    _codes.TWO_PLUS_TWO: TwoPlusTwo,
    _codes.THREE_PLUS_ONE: ThreePlusOne,
}


def _mask(ids: Iterable[int], n: int) -> int:
    m = 0
    for i in ids:
        if not 0 <= i < n:
            raise ValueError(f"unknown point id {i}")
        m |= 1 << i
    return m


def _ids(mask: int) -> set[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class IntervalRepresentation:
    """Unit-interval layout: point p occupies [left[p], left[p] + 1].

    Comparability is strict gap: p < q iff left[p] + 1 < left[q], so
    touching or overlapping intervals are incomparable.
    """

    left: tuple[Fraction, ...]

    def less(self, p: int, q: int) -> bool:
        return self.left[p] + 1 < self.left[q]


class SemiOrder:
    """An on-line semi-order over dense point ids 0..n-1."""

    def __init__(self, backend: str | None = None):
        self._core = SemiOrderCore() if backend is None else core_class(backend)()

    @property
    def size(self) -> int:
        return self._core.n

    def __len__(self) -> int:
        return self._core.n

    def add_point(self, down: Iterable[int] = (), up: Iterable[int] = ()) -> int:
        """Append a point with the declared strict relations.

        Returns the new point's id.  The order is mutated only on success;
        on violation a typed :class:`~semichain.errors.OrderError` is raised
        naming the conflicting point.
        """
        n = self._core.n
        dmask = _mask(down, n)
        umask = _mask(up, n)
        status, witness = self._core.try_insert(dmask, umask)
        if status != _codes.OK:
            raise _ERROR_BY_CODE[status](
                f"{_ERROR_BY_CODE[status].__name__} at point {witness}", witness
            )
        return n

    def remove_last(self) -> None:
        self._core.remove_last()

    def clone(self) -> "SemiOrder":
        other = SemiOrder.__new__(SemiOrder)
        other._core = self._core.clone()
        return other

    # --- relation queries ------------------------------------------------

    def less(self, p: int, q: int) -> bool:
        return bool(self._core.down_mask(q) >> p & 1)

    def down_set(self, p: int) -> set[int]:
        return _ids(self._core.down_mask(p))

    def up_set(self, p: int) -> set[int]:
        return _ids(self._core.up_mask(p))

    def incomparables(self, p: int) -> set[int]:
        if not 0 <= p < self._core.n:
            raise ValueError(f"unknown point id {p}")
        return _ids(self.incomparable_mask(p))

    def maximal_points(self) -> set[int]:
        return _ids(self._core.maximal_mask())

    def width(self) -> int:
        return self._core.width()

    # --- bitset views (engine internals, hot paths) ----------------------

    def down_mask(self, p: int) -> int:
        return self._core.down_mask(p)

    def up_mask(self, p: int) -> int:
        return self._core.up_mask(p)

    def incomparable_mask(self, p: int) -> int:
        full = (1 << self._core.n) - 1
        return full & ~(self._core.down_mask(p) | self._core.up_mask(p) | (1 << p))

    def down_size(self, p: int) -> int:
        return self._core.dsize(p)

    def up_size(self, p: int) -> int:
        return self._core.usize(p)

    def state_key(self) -> tuple:
        return self._core.state_key()

    # --- interval representation -----------------------------------------

    def interval_representation(self) -> IntervalRepresentation:
        """Exact rational unit-interval layout realizing the relation.

        Solves the difference constraints {l(q) - l(p) >= 1 + eps for p < q;
        |l(p) - l(q)| <= 1 for p parallel q} with eps = 1/(n+1) by
        shortest-path relaxation from a super-source, then shifts the
        minimum to 0.  Arithmetic is integer in units of 1/(n+1).
        """
        n = self._core.n
        if n == 0:
            return IntervalRepresentation(())
        unit = n + 1
        gap = unit + 1  # 1 + eps, scaled
        # edges[v] holds (u, w) meaning l(v) - l(u) <= w (scaled)
        edges: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for q in range(n):
            dq = self._core.down_mask(q)
            for p in range(q):
                if dq >> p & 1:  # p < q: l(p) - l(q) <= -gap
                    edges[q].append((p, -gap))
                elif self._core.down_mask(p) >> q & 1:
                    edges[p].append((q, -gap))
                else:
                    edges[p].append((q, unit))
                    edges[q].append((p, unit))
        dist = [0] * n
        inqueue = [True] * n
        passes = [0] * n
        queue = deque(range(n))
        while queue:
            u = queue.popleft()
            inqueue[u] = False
            du = dist[u]
            for v, w in edges[u]:
                nd = du + w
                if nd < dist[v]:
                    dist[v] = nd
                    if not inqueue[v]:
                        passes[v] += 1
                        if passes[v] > n:
                            raise InternalInfeasible(
                                "negative cycle in interval constraints"
                            )
                        inqueue[v] = True
                        queue.append(v)
        low = min(dist)
        return IntervalRepresentation(
            tuple(Fraction(d - low, unit) for d in dist)
        )
