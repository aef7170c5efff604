# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same contract as pykernel.enum_level, including the witness tie rule
(minimal weight, then lexicographically smallest message vector).  The
packing layout is documented in pykernel; this module only walks it faster.
"""

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND_NAME = "cython"

cdef int KIND_BIT = 0
cdef int KIND_NIB = 1
cdef int KIND_BYTE = 2
cdef int KIND_BYTE2 = 3

cdef uint64_t ONES = 0x0101010101010101u
cdef uint64_t HI = 0x8080808080808080u
cdef uint64_t NIB_LO = 0x1111111111111111u
cdef uint64_t LOW7 = 0x7F7F7F7F7F7F7F7Fu


cdef struct Ctx:
    const uint64_t* S
    uint64_t* partial      # (w, words) scratch, row d = prefix sum at depth d
    int* idx
    int* sc
    uint8_t* best_m
    uint8_t* cand_m
    int k
    int q
    int w
    int words
    int wwords
    int kind
    int shard
    int nshards
    uint64_t p
    int64_t base_weight
    long long leaves
    int64_t best_w
    int have_best


cdef inline uint64_t _add_modp(uint64_t a, uint64_t b, uint64_t p) nogil:
    cdef uint64_t s = a + b
    cdef uint64_t over = ((s + (<uint64_t>128 - p) * ONES) & HI) >> 7
    return s - over * p


cdef inline void _combine_into(Ctx* c, const uint64_t* a, const uint64_t* b,
                               uint64_t* out) nogil:
    cdef int t
    if c.kind == KIND_BIT or c.kind == KIND_NIB:
        for t in range(c.words):
            out[t] = a[t] ^ b[t]
    else:
        for t in range(c.words):
            out[t] = _add_modp(a[t], b[t], c.p)


cdef inline int64_t _fused_weight(Ctx* c, const uint64_t* a, const uint64_t* b) nogil:
    cdef int t
    cdef uint64_t x, y, m
    cdef int64_t wt = 0
    if c.kind == KIND_BIT:
        for t in range(c.words):
            wt += __builtin_popcountll(a[t] ^ b[t])
    elif c.kind == KIND_NIB:
        for t in range(c.words):
            x = a[t] ^ b[t]
            m = x | (x >> 1)
            m = (m | (m >> 2)) & NIB_LO
            wt += __builtin_popcountll(m)
    elif c.kind == KIND_BYTE:
        for t in range(c.words):
            x = _add_modp(a[t], b[t], c.p)
            wt += __builtin_popcountll((x + LOW7) & HI)
    else:
        for t in range(c.wwords):
            x = _add_modp(a[t], b[t], c.p)
            y = _add_modp(a[t + c.wwords], b[t + c.wwords], c.p)
            wt += __builtin_popcountll(((x | y) + LOW7) & HI)
    return wt


cdef inline int _m_less(const uint8_t* a, const uint8_t* b, int k) nogil:
    cdef int t
    for t in range(k):
        if a[t] != b[t]:
            return 1 if a[t] < b[t] else 0
    return 0


cdef inline void _build_m(Ctx* c, int depth, int last_i, int last_c) nogil:
    cdef int t
    memset(c.cand_m, 0, c.k)
    for t in range(depth):
        c.cand_m[c.idx[t]] = <uint8_t>c.sc[t]
    c.cand_m[last_i] = <uint8_t>last_c


cdef inline void _consider(Ctx* c, int64_t wt, int depth, int last_i, int last_c) nogil:
    if c.have_best and wt > c.best_w:
        return
    _build_m(c, depth, last_i, last_c)
    if (not c.have_best) or wt < c.best_w or _m_less(c.cand_m, c.best_m, c.k):
        c.best_w = wt
        c.have_best = 1
        memcpy(c.best_m, c.cand_m, c.k)


cdef void _leaf_scan(Ctx* c, const uint64_t* partial, int last_start) nogil:
    cdef int j, ci
    cdef int64_t wt
    cdef const uint64_t* row = c.S + <long long>(last_start + 1) * (c.q - 1) * c.words
    cdef long long nleaf = 0
    for j in range(last_start + 1, c.k):
        for ci in range(1, c.q):
            wt = c.base_weight + _fused_weight(c, partial, row)
            row += c.words
            nleaf += 1
            if (not c.have_best) or wt <= c.best_w:
                _consider(c, wt, c.w - 1, j, ci)
    c.leaves += nleaf


cdef void _go(Ctx* c, int depth, int start, const uint64_t* pprev) nogil:
    cdef int hi = c.k - (c.w - 1 - depth)
    cdef int i, ci, cmax
    cdef uint64_t* pcur = c.partial + depth * c.words
    cdef const uint64_t* row
    for i in range(start, hi):
        if depth == 0 and i % c.nshards != c.shard:
            continue
        c.idx[depth] = i
        cmax = 2 if depth == 0 else c.q
        for ci in range(1, cmax):
            c.sc[depth] = ci
            row = c.S + (<long long>i * (c.q - 1) + (ci - 1)) * c.words
            _combine_into(c, pprev, row, pcur)
            if depth == c.w - 2:
                _leaf_scan(c, pcur, i)
            else:
                _go(c, depth + 1, i + 1, pcur)


cdef void _level_one(Ctx* c) nogil:
    cdef int i
    cdef int64_t wt
    cdef const uint64_t* row
    cdef int best_i = -1
    i = c.shard
    while i < c.k:
        row = c.S + (<long long>i * (c.q - 1)) * c.words
        wt = c.base_weight + _fused_weight(c, c.partial, row)  # partial row 0 is zero
        c.leaves += 1
        if (not c.have_best) or wt < c.best_w or (wt == c.best_w and i > best_i):
            c.best_w = wt
            c.have_best = 1
            best_i = i
        i += c.nshards
    if c.have_best:
        memset(c.best_m, 0, c.k)
        c.best_m[best_i] = 1


def enum_level(fmt, S, int q, int w, int64_t base_weight, int shard, int nshards):
    """See pykernel.enum_level; identical contract."""
    cdef int k = S.shape[0]
    if w < 1 or w > k:
        return 0, None, None
    if S.shape[2] == 0:
        from . import pykernel
        return pykernel.enum_level(fmt, S, q, w, base_weight, shard, nshards)

    cdef uint64_t[:, :, ::1] Sv = S
    part = np.zeros((max(w, 1), S.shape[2]), dtype=np.uint64)
    idx = np.zeros(max(w, 1), dtype=np.intc)
    sc = np.zeros(max(w, 1), dtype=np.intc)
    best_m = np.zeros(k, dtype=np.uint8)
    cand_m = np.zeros(k, dtype=np.uint8)
    cdef uint64_t[:, ::1] partv = part
    cdef int[::1] idxv = idx
    cdef int[::1] scv = sc
    cdef uint8_t[::1] bmv = best_m
    cdef uint8_t[::1] cmv = cand_m

    cdef Ctx c
    c.S = &Sv[0, 0, 0]
    c.partial = &partv[0, 0]
    c.idx = &idxv[0]
    c.sc = &scv[0]
    c.best_m = &bmv[0]
    c.cand_m = &cmv[0]
    c.k = k
    c.q = q
    c.w = w
    c.words = <int>S.shape[2]
    c.wwords = <int>fmt.wwords
    c.kind = <int>fmt.kind
    c.shard = shard
    c.nshards = nshards
    c.p = <uint64_t>fmt.p
    c.base_weight = base_weight
    c.leaves = 0
    c.best_w = 0
    c.have_best = 0

    # zero scratch row used as the depth-0 base
    cdef uint64_t[::1] zerov = np.zeros(S.shape[2], dtype=np.uint64)
    with nogil:
        if w == 1:
            c.partial = &zerov[0]
            _level_one(&c)
        else:
            _go(&c, 0, 0, &zerov[0])

    if not c.have_best:
        return int(c.leaves), None, None
    return int(c.leaves), int(c.best_w), bytes(best_m.tobytes())
