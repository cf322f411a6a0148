"""Pure-Python incremental semi-order core.

Points are dense integers 0..n-1 in arrival order; strict down/up sets are
kept as Python int bitsets.  ``try_insert`` validates a candidate point
against the semi-order axioms and commits only on success.

Validation strategy (all tests on the post-insertion sets, done
incrementally against the pre-insertion state, which is known valid):

* declared sets must be transitively closed and mutually consistent;
* down-sets must stay linearly ordered by inclusion (their failure is the
  forbidden two-incomparable-pairs configuration), once per up-sets too;
* the order must keep a linear "trace": no pair p, q may end up with both
  down(p) strictly inside down(q) and up(p) strictly inside up(q).  On an
  inclusion-linear order that condition is exactly freedom from the
  three-chain-plus-isolated-point configuration.

Because the pre-insertion sets are inclusion-linear, strict inclusion
between them is equivalent to a size comparison, which keeps the scan at
O(n) set operations per insertion.  The compiled core in ``_core_cy.pyx``
implements the identical algorithm (including witness choice) on C bit
arrays; the two are interchangeable and differentially tested.
"""

from __future__ import annotations

from . import _codes


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class SemiOrderCore:
    """Validated incremental storage for one semi-order."""

    __slots__ = ("n", "_down", "_up", "_dsize", "_usize")

    def __init__(self):
        self.n = 0
        self._down: list[int] = []
        self._up: list[int] = []
        self._dsize: list[int] = []
        self._usize: list[int] = []

    def clone(self) -> "SemiOrderCore":
        other = SemiOrderCore()
        other.n = self.n
        other._down = self._down[:]
        other._up = self._up[:]
        other._dsize = self._dsize[:]
        other._usize = self._usize[:]
        return other

    def down_mask(self, p: int) -> int:
        return self._down[p]

    def up_mask(self, p: int) -> int:
        return self._up[p]

    def dsize(self, p: int) -> int:
        return self._dsize[p]

    def usize(self, p: int) -> int:
        return self._usize[p]

    def state_key(self) -> tuple:
        return tuple(self._down)

    def try_insert(self, down: int, up: int) -> tuple[int, int]:
        """Validate and commit one point; returns (status, witness).

        witness is a conflicting existing point id, or -1.
        """
        n = self.n
        if down & up:
            return _codes.DOWN_UP_OVERLAP, (down & up & -(down & up)).bit_length() - 1
        full = (1 << n) - 1
        if down & ~full or up & ~full:
            raise ValueError("mask references unknown points")

        dlist = self._down
        ulist = self._up
        for q in _bits(down):
            if dlist[q] & ~down:
                return _codes.NOT_DOWNWARD_CLOSED, q
        for r in _bits(up):
            if ulist[r] & ~up:
                return _codes.NOT_UPWARD_CLOSED, r

        newbit = 1 << n
        for p in range(n):
            pbit = 1 << p
            dp = dlist[p] | (newbit if up & pbit else 0)
            if (down & ~dp) and (dp & ~down):
                return _codes.TWO_PLUS_TWO, p
            upp = ulist[p] | (newbit if down & pbit else 0)
            if (up & ~upp) and (upp & ~up):
                return _codes.TWO_PLUS_TWO, p

        # trace linearity: strict double inclusion means the new point
        # completes a 3-chain incomparable to a fourth point
        dsize = self._dsize
        usize = self._usize
        sd_new = down.bit_count()
        su_new = up.bit_count()
        for p in range(n):
            pbit = 1 << p
            sdp = dsize[p] + (1 if up & pbit else 0)
            sup = usize[p] + (1 if down & pbit else 0)
            if (sd_new < sdp and su_new < sup) or (sdp < sd_new and sup < su_new):
                return _codes.THREE_PLUS_ONE, p

        # the insertion also shifts existing pairs: a point of the declared
        # down-set gains the new point above it (resp. up-set, below), which
        # can strictly separate it from a previously trace-equal outsider
        if down or up:
            min_sd_by_su: dict[int, int] = {}
            min_su_by_sd: dict[int, int] = {}
            rest = full & ~(down | up)
            for p in _bits(rest):
                su = usize[p]
                sd = dsize[p]
                if sd < min_sd_by_su.get(su, n + 1):
                    min_sd_by_su[su] = sd
                if su < min_su_by_sd.get(sd, n + 1):
                    min_su_by_sd[sd] = su
            for q in _bits(down):
                if min_sd_by_su.get(usize[q], n + 1) < dsize[q]:
                    return _codes.THREE_PLUS_ONE, q
            for q in _bits(up):
                if min_su_by_sd.get(dsize[q], n + 1) < usize[q]:
                    return _codes.THREE_PLUS_ONE, q

        # commit
        for q in _bits(down):
            ulist[q] |= newbit
            usize[q] += 1
        for r in _bits(up):
            dlist[r] |= newbit
            dsize[r] += 1
        dlist.append(down)
        ulist.append(up)
        dsize.append(sd_new)
        usize.append(su_new)
        self.n = n + 1
        return _codes.OK, -1

    def remove_last(self) -> None:
        if self.n == 0:
            raise ValueError("empty order")
        self.n -= 1
        n = self.n
        down = self._down.pop()
        up = self._up.pop()
        self._dsize.pop()
        self._usize.pop()
        clear = ~(1 << n)
        for q in _bits(down):
            self._up[q] &= clear
            self._usize[q] -= 1
        for r in _bits(up):
            self._down[r] &= clear
            self._dsize[r] -= 1

    def width(self) -> int:
        """Maximum antichain size.

        On an inclusion-linear order, for each p the set of points whose
        down-set is contained in down(p) but which are not below p is an
        antichain through p, and some maximum antichain has this shape
        (witnessed by its member with the largest down-set).
        """
        n = self.n
        if n == 0:
            return 0
        counts = [0] * (n + 1)
        for s in self._dsize:
            counts[s] += 1
        running = 0
        best = 0
        for s in range(n + 1):
            if counts[s]:
                running += counts[s]
                if running - s > best:
                    best = running - s
        return best

    def maximal_mask(self) -> int:
        mask = 0
        for p in range(self.n):
            if not self._usize[p]:
                mask |= 1 << p
        return mask
