"""Pure-numpy enumeration kernel: the fallback backend.

Row vectors are packed into uint64 words so that adding two codewords and
taking the Hamming weight are a handful of word operations:

  BIT    q = 2        1 bit per symbol, addition is XOR
  NIB    q = 4, 8     4 bits per symbol; char 2, so addition is still XOR
  BYTE   q = 3, 5, 7  1 byte per symbol, SWAR add-mod-p (bytes stay < p)
  BYTE2  q = 9        two BYTE planes mod 3 (index = c0 + 3*c1), plane0
                      occupies words [0, wwords), plane1 the rest

The compiled backend implements the same contract; results must be
bit-identical, including the witness tie rule: among candidates of minimal
weight, the one whose message vector m (length k, coefficient indices,
untouched positions zero) is lexicographically smallest wins.
"""

import numpy as np

BIT, NIB, BYTE, BYTE2 = 0, 1, 2, 3

_ONES = np.uint64(0x0101010101010101)
_HI = np.uint64(0x8080808080808080)
_NIB_LO = np.uint64(0x1111111111111111)
_LOW7 = np.uint64(0x7F7F7F7F7F7F7F7F)

BACKEND_NAME = "pure"


class PackFormat:
    """Packing metadata for one (field, length) pair."""

    __slots__ = ("kind", "p", "n", "words", "wwords")

    def __init__(self, kind, p, n, words, wwords):
        self.kind = kind
        self.p = p
        self.n = n
        self.words = words
        self.wwords = wwords


def pack_format(field, n):
    q = field.q
    if q == 2:
        kind, w = BIT, (n + 63) // 64
        return PackFormat(kind, field.p, n, w, w)
    if q in (4, 8):
        kind, w = NIB, (n + 15) // 16
        return PackFormat(kind, field.p, n, w, w)
    if q == 9:
        w = (n + 7) // 8
        return PackFormat(BYTE2, field.p, n, 2 * w, w)
    w = (n + 7) // 8
    return PackFormat(BYTE, field.p, n, w, w)


def _pack_plane(vals, per_word, shift_bits, words):
    r, n = vals.shape
    buf = np.zeros((r, words * per_word), dtype=np.uint64)
    buf[:, :n] = vals
    buf = buf.reshape(r, words, per_word)
    shifts = (np.arange(per_word, dtype=np.uint64) * np.uint64(shift_bits))
    return np.bitwise_or.reduce(buf << shifts, axis=2)


def pack_rows(fmt, rows):
    """rows: (r, n) uint8 indices -> (r, fmt.words) uint64."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.uint8))
    if fmt.kind == BIT:
        return _pack_plane(rows, 64, 1, fmt.words)
    if fmt.kind == NIB:
        return _pack_plane(rows, 16, 4, fmt.words)
    if fmt.kind == BYTE:
        return _pack_plane(rows, 8, 8, fmt.words)
    p0 = _pack_plane(rows % 3, 8, 8, fmt.wwords)
    p1 = _pack_plane(rows // 3, 8, 8, fmt.wwords)
    return np.hstack([p0, p1])


def unpack_rows(fmt, packed):
    """Inverse of pack_rows, for tests and witness decoding."""
    packed = np.atleast_2d(packed)
    r = packed.shape[0]

    def plane(words, per_word, shift_bits, mask):
        shifts = (np.arange(per_word, dtype=np.uint64) * np.uint64(shift_bits))
        out = (words[:, :, None] >> shifts) & np.uint64(mask)
        return out.reshape(r, -1)[:, : fmt.n].astype(np.uint8)

    if fmt.kind == BIT:
        return plane(packed, 64, 1, 1)
    if fmt.kind == NIB:
        return plane(packed, 16, 4, 0xF)
    if fmt.kind == BYTE:
        return plane(packed, 8, 8, 0xFF)
    c0 = plane(packed[:, : fmt.wwords], 8, 8, 0xFF)
    c1 = plane(packed[:, fmt.wwords :], 8, 8, 0xFF)
    return c0 + 3 * c1


def combine(fmt, a, b):
    """Packed sum of two (broadcastable) packed arrays."""
    if fmt.kind in (BIT, NIB):
        return a ^ b
    p = np.uint64(fmt.p)
    s = a + b
    over = ((s + (np.uint64(128) - p) * _ONES) & _HI) >> np.uint64(7)
    return s - over * p


def weights(fmt, arr):
    """Hamming weights along the last (word) axis."""
    if fmt.kind == BIT:
        return np.bitwise_count(arr).sum(axis=-1, dtype=np.int64)
    if fmt.kind == NIB:
        m = arr | (arr >> np.uint64(1))
        m = (m | (m >> np.uint64(2))) & _NIB_LO
        return np.bitwise_count(m).sum(axis=-1, dtype=np.int64)
    if fmt.kind == BYTE:
        m = (arr + _LOW7) & _HI
        return np.bitwise_count(m).sum(axis=-1, dtype=np.int64)
    v = arr[..., : fmt.wwords] | arr[..., fmt.wwords :]
    m = (v + _LOW7) & _HI
    return np.bitwise_count(m).sum(axis=-1, dtype=np.int64)


def scalar_rows(field, fmt, rows):
    """(k, q-1, words): packed c*row for every nonzero scalar index c."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.uint8))
    stack = [pack_rows(fmt, field.mul_table[c, rows]) for c in range(1, field.q)]
    return np.ascontiguousarray(np.stack(stack, axis=1))


def _message_bytes(k, idx, sc, last_i=None, last_c=None):
    m = np.zeros(k, dtype=np.uint8)
    for t, i in enumerate(idx):
        m[i] = sc[t]
    if last_i is not None:
        m[last_i] = last_c
    return m.tobytes()


def enum_level(fmt, S, q, w, base_weight, shard, nshards):
    """Enumerate weight-w message combinations over one information set.

    S is the (k, q-1, words) scalar-row table for the redundancy columns.
    Messages have ascending support indices, leading coefficient fixed to 1,
    remaining coefficients over all nonzero indices; only supports whose
    smallest index is congruent to shard mod nshards are visited.

    Returns (leaves, best_weight, best_message) with best_weight including
    base_weight, minimizing (weight, message bytes); (leaves, None, None)
    when the shard is empty.
    """
    k = S.shape[0]
    qm1 = q - 1
    if w < 1 or w > k:
        return 0, None, None
    leaves = 0
    best_w = None
    best_m = None

    if w == 1:
        rows = np.arange(shard, k, nshards)
        if rows.size == 0:
            return 0, None, None
        wts = weights(fmt, S[rows, 0]) + base_weight
        leaves = int(rows.size)
        mn = int(wts.min())
        ties = rows[np.nonzero(wts == mn)[0]]
        pick = int(ties.max())
        return leaves, mn, _message_bytes(k, [pick], [1])

    idx = [0] * (w - 1)
    sc = [0] * (w - 1)
    zero = np.zeros(S.shape[2], dtype=np.uint64)

    def leaf_block(partial):
        nonlocal leaves, best_w, best_m
        lo = idx[w - 2] + 1
        block = S[lo:].reshape((k - lo) * qm1, S.shape[2])
        cand = combine(fmt, partial[None, :], block)
        wts = weights(fmt, cand) + base_weight
        leaves += wts.size
        mn = int(wts.min())
        if best_w is not None and mn > best_w:
            return
        ties = np.nonzero(wts == mn)[0]
        i_vals = ties // qm1
        hi = int(i_vals.max())  # largest last index = lexicographically smallest m
        sub = ties[i_vals == hi]
        c = int(sub.min() % qm1) + 1
        m = _message_bytes(k, idx, sc, lo + hi, c)
        if best_w is None or (mn, m) < (best_w, best_m):
            best_w, best_m = mn, m

    def go(depth, start, partial):
        hi = k - (w - 1 - depth)
        for i in range(start, hi):
            if depth == 0 and i % nshards != shard:
                continue
            idx[depth] = i
            crange = (1,) if depth == 0 else range(1, q)
            for c in crange:
                sc[depth] = c
                pp = combine(fmt, partial, S[i, c - 1])
                if depth == w - 2:
                    leaf_block(pp)
                else:
                    go(depth + 1, i + 1, pp)

    go(0, 0, zero)
    return leaves, best_w, best_m
