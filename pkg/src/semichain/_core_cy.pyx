# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled incremental semi-order core.

Same algorithm and witness choice as ``_core_pure``, on flat C bit arrays;
the two backends are differentially tested against each other.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

from . import _codes

cdef int OK = _codes.OK
cdef int DOWN_UP_OVERLAP = _codes.DOWN_UP_OVERLAP
cdef int NOT_DOWNWARD_CLOSED = _codes.NOT_DOWNWARD_CLOSED
cdef int NOT_UPWARD_CLOSED = _codes.NOT_UPWARD_CLOSED
cdef int TWO_PLUS_TWO = _codes.TWO_PLUS_TWO
cdef int THREE_PLUS_ONE = _codes.THREE_PLUS_ONE


cdef inline int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef class SemiOrderCore:
    cdef int _n
    cdef int cap          # allocated point capacity
    cdef int words        # words per row (cap / 64)
    cdef unsigned long long *down
    cdef unsigned long long *up
    cdef int *dsizes
    cdef int *usizes

    def __cinit__(self):
        self._n = 0
        self.cap = 64
        self.words = 1
        self.down = <unsigned long long *> calloc(self.cap * self.words, 8)
        self.up = <unsigned long long *> calloc(self.cap * self.words, 8)
        self.dsizes = <int *> calloc(self.cap, sizeof(int))
        self.usizes = <int *> calloc(self.cap, sizeof(int))
        if not self.down or not self.up or not self.dsizes or not self.usizes:
            raise MemoryError()

    def __dealloc__(self):
        free(self.down)
        free(self.up)
        free(self.dsizes)
        free(self.usizes)

    @property
    def n(self):
        return self._n

    cdef void _grow(self):
        cdef int new_cap = self.cap * 2
        cdef int new_words = new_cap // 64
        cdef unsigned long long *nd = <unsigned long long *> calloc(new_cap * new_words, 8)
        cdef unsigned long long *nu = <unsigned long long *> calloc(new_cap * new_words, 8)
        cdef int *nds = <int *> calloc(new_cap, sizeof(int))
        cdef int *nus = <int *> calloc(new_cap, sizeof(int))
        cdef int i
        if not nd or not nu or not nds or not nus:
            raise MemoryError()
        for i in range(self._n):
            memcpy(nd + i * new_words, self.down + i * self.words, self.words * 8)
            memcpy(nu + i * new_words, self.up + i * self.words, self.words * 8)
        memcpy(nds, self.dsizes, self._n * sizeof(int))
        memcpy(nus, self.usizes, self._n * sizeof(int))
        free(self.down)
        free(self.up)
        free(self.dsizes)
        free(self.usizes)
        self.down = nd
        self.up = nu
        self.dsizes = nds
        self.usizes = nus
        self.cap = new_cap
        self.words = new_words

    cdef object _row_to_int(self, unsigned long long *row):
        cdef object out = 0
        cdef int j
        for j in range(self.words - 1, -1, -1):
            out = (out << 64) | row[j]
        return out

    cdef void _int_to_row(self, object mask, unsigned long long *row):
        cdef int j
        cdef object m = mask
        for j in range(self.words):
            row[j] = <unsigned long long> (m & 0xFFFFFFFFFFFFFFFF)
            m >>= 64

    def clone(self):
        cdef SemiOrderCore other = SemiOrderCore.__new__(SemiOrderCore)
        while other.cap < self.cap:
            other._grow()
        other._n = self._n
        memcpy(other.down, self.down, self._n * self.words * 8)
        memcpy(other.up, self.up, self._n * self.words * 8)
        memcpy(other.dsizes, self.dsizes, self._n * sizeof(int))
        memcpy(other.usizes, self.usizes, self._n * sizeof(int))
        return other

    def down_mask(self, int p):
        if p < 0 or p >= self._n:
            raise IndexError(p)
        return self._row_to_int(self.down + p * self.words)

    def up_mask(self, int p):
        if p < 0 or p >= self._n:
            raise IndexError(p)
        return self._row_to_int(self.up + p * self.words)

    def dsize(self, int p):
        if p < 0 or p >= self._n:
            raise IndexError(p)
        return self.dsizes[p]

    def usize(self, int p):
        if p < 0 or p >= self._n:
            raise IndexError(p)
        return self.usizes[p]

    def state_key(self):
        return tuple(self.down_mask(p) for p in range(self._n))

    def try_insert(self, object down, object up):
        cdef int n = self._n
        cdef object full = (<object> 1 << n) - 1
        cdef object overlap = down & up
        if overlap:
            return DOWN_UP_OVERLAP, (overlap & -overlap).bit_length() - 1
        if (down & ~full) or (up & ~full):
            raise ValueError("mask references unknown points")
        if n + 1 > self.cap:
            self._grow()

        cdef int W = self.words
        cdef unsigned long long *drow = <unsigned long long *> malloc(W * 8)
        cdef unsigned long long *urow = <unsigned long long *> malloc(W * 8)
        if not drow or not urow:
            raise MemoryError()
        self._int_to_row(down, drow)
        self._int_to_row(up, urow)

        cdef int p, j, sdp, sup
        cdef bint in_down, in_up, d_sub, d_sup, u_sub, u_sup
        cdef unsigned long long pd, pu
        cdef int sd_new = 0, su_new = 0
        cdef tuple shift
        for j in range(W):
            sd_new += _popcount(drow[j])
            su_new += _popcount(urow[j])

        try:
            # declared closure (all down checks before up, as in the pure core)
            for p in range(n):
                if (drow[p >> 6] >> (p & 63)) & 1:
                    for j in range(W):
                        if self.down[p * W + j] & ~drow[j]:
                            return NOT_DOWNWARD_CLOSED, p
            for p in range(n):
                if (urow[p >> 6] >> (p & 63)) & 1:
                    for j in range(W):
                        if self.up[p * W + j] & ~urow[j]:
                            return NOT_UPWARD_CLOSED, p

            # inclusion linearity against every existing point, post-insertion
            for p in range(n):
                in_down = (drow[p >> 6] >> (p & 63)) & 1
                in_up = (urow[p >> 6] >> (p & 63)) & 1
                d_sub = True   # down(new) subset of down'(p)
                d_sup = True   # down'(p) subset of down(new)
                u_sub = True
                u_sup = True
                for j in range(W):
                    pd = self.down[p * W + j]
                    pu = self.up[p * W + j]
                    if drow[j] & ~pd:
                        d_sub = False
                    if pd & ~drow[j]:
                        d_sup = False
                    if urow[j] & ~pu:
                        u_sub = False
                    if pu & ~urow[j]:
                        u_sup = False
                if in_up:
                    d_sup = False  # down'(p) gains the new point
                if in_down:
                    u_sup = False
                if not (d_sub or d_sup) or not (u_sub or u_sup):
                    return TWO_PLUS_TWO, p

            # trace linearity via sizes (valid on the linear pre-state)
            for p in range(n):
                in_down = (drow[p >> 6] >> (p & 63)) & 1
                in_up = (urow[p >> 6] >> (p & 63)) & 1
                sdp = self.dsizes[p] + (1 if in_up else 0)
                sup = self.usizes[p] + (1 if in_down else 0)
                if (sd_new < sdp and su_new < sup) or (sdp < sd_new and sup < su_new):
                    return THREE_PLUS_ONE, p

            if sd_new or su_new:
                shift = self._pair_shift_scan(drow, urow)
                if <int> shift[0] != OK:
                    return shift

            # commit
            for p in range(n):
                if (drow[p >> 6] >> (p & 63)) & 1:
                    self.up[p * W + (n >> 6)] |= (<unsigned long long> 1) << (n & 63)
                    self.usizes[p] += 1
                if (urow[p >> 6] >> (p & 63)) & 1:
                    self.down[p * W + (n >> 6)] |= (<unsigned long long> 1) << (n & 63)
                    self.dsizes[p] += 1
            memcpy(self.down + n * W, drow, W * 8)
            memcpy(self.up + n * W, urow, W * 8)
            self.dsizes[n] = sd_new
            self.usizes[n] = su_new
            self._n = n + 1
            return OK, -1
        finally:
            free(drow)
            free(urow)

    cdef tuple _pair_shift_scan(self, unsigned long long *drow, unsigned long long *urow):
        """Existing-pair trace violations caused by the new point's edges."""
        cdef int n = self._n
        cdef int p
        cdef bint in_down, in_up
        cdef int *min_sd_by_su = <int *> malloc((n + 1) * sizeof(int))
        cdef int *min_su_by_sd = <int *> malloc((n + 1) * sizeof(int))
        cdef int i
        if not min_sd_by_su or not min_su_by_sd:
            raise MemoryError()
        try:
            for i in range(n + 1):
                min_sd_by_su[i] = n + 1
                min_su_by_sd[i] = n + 1
            for p in range(n):
                in_down = (drow[p >> 6] >> (p & 63)) & 1
                in_up = (urow[p >> 6] >> (p & 63)) & 1
                if in_down or in_up:
                    continue
                if self.dsizes[p] < min_sd_by_su[self.usizes[p]]:
                    min_sd_by_su[self.usizes[p]] = self.dsizes[p]
                if self.usizes[p] < min_su_by_sd[self.dsizes[p]]:
                    min_su_by_sd[self.dsizes[p]] = self.usizes[p]
            for p in range(n):
                if (drow[p >> 6] >> (p & 63)) & 1:
                    if min_sd_by_su[self.usizes[p]] < self.dsizes[p]:
                        return THREE_PLUS_ONE, p
            for p in range(n):
                if (urow[p >> 6] >> (p & 63)) & 1:
                    if min_su_by_sd[self.dsizes[p]] < self.usizes[p]:
                        return THREE_PLUS_ONE, p
            return OK, -1
        finally:
            free(min_sd_by_su)
            free(min_su_by_sd)

    def remove_last(self):
        if self._n == 0:
            raise ValueError("empty order")
        cdef int n = self._n - 1
        cdef int W = self.words
        cdef int p
        cdef unsigned long long clear_bit = (<unsigned long long> 1) << (n & 63)
        cdef int word = n >> 6
        for p in range(n):
            if (self.down[n * W + (p >> 6)] >> (p & 63)) & 1:
                self.up[p * W + word] &= ~clear_bit
                self.usizes[p] -= 1
            if (self.up[n * W + (p >> 6)] >> (p & 63)) & 1:
                self.down[p * W + word] &= ~clear_bit
                self.dsizes[p] -= 1
        memset(self.down + n * W, 0, W * 8)
        memset(self.up + n * W, 0, W * 8)
        self.dsizes[n] = 0
        self.usizes[n] = 0
        self._n = n

    def width(self):
        cdef int n = self._n
        if n == 0:
            return 0
        cdef int *counts = <int *> calloc(n + 1, sizeof(int))
        cdef int p, s, running = 0, best = 0
        if not counts:
            raise MemoryError()
        try:
            for p in range(n):
                counts[self.dsizes[p]] += 1
            for s in range(n + 1):
                if counts[s]:
                    running += counts[s]
                    if running - s > best:
                        best = running - s
            return best
        finally:
            free(counts)

    def maximal_mask(self):
        cdef object mask = 0
        cdef int p
        for p in range(self._n):
            if self.usizes[p] == 0:
                mask |= (<object> 1) << p
        return mask
