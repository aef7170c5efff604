"""Minimum distance and weight distribution.

The exact engine is information-set enumeration: build a maximal family of
(near-)disjoint information sets by repeated row reduction preferring unused
columns, then enumerate message vectors of information weight w = 1, 2, ...
in lockstep across the sets.  After finishing level w on a set whose fresh
rank is r (slack s = k - r), any codeword not yet seen carries weight at
least w + 1 - s on that set's fresh columns, and fresh columns are disjoint
across sets, so

    lower = sum over sets of max(0, w_j + 1 - s_j)

and the result is exact as soon as lower >= upper.

Determinism contract: the budget is charged per (set, level) step from the
closed form C(k, w) * (q-1)^(w-1) before the step runs, the step sequence is
fixed, and witnesses are merged by (weight, message lex) within a step and
(weight, codeword bytes) across steps, so results are identical for any
thread or shard count.
"""

import hashlib
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import NotACodeword, OracleScaleExceeded, ZeroCode
from .linear import GeneratorMatrix, basis, contains, mat_mul

DEFAULT_BUDGET = 10**8
EXTENDED_BUDGET = 10**11
ORACLE_CAP = 1 << 24

EXACT = "exact"
BOUNDED = "bounded"
BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class DistanceResult:
    status: str
    lower: int
    upper: int
    witness: np.ndarray | None
    work: int
    elapsed: float
    levels: tuple

    @property
    def is_exact(self):
        return self.status == EXACT

    def __str__(self):
        if self.is_exact:
            return f"d = {self.upper} (exact, work {self.work})"
        return f"{self.lower} <= d <= {self.upper} ({self.status}, work {self.work})"


class _InfoSet:
    __slots__ = ("matrix", "columns", "fresh", "slack", "table", "fmt")

    def __init__(self, field, matrix, columns, fresh, k):
        self.matrix = matrix  # k x n, identity on `columns`
        self.columns = columns
        self.fresh = fresh
        self.slack = k - fresh
        n = matrix.shape[1]
        red = [c for c in range(n) if c not in set(columns)]
        self.fmt = K.pack_format(field, len(red))
        self.table = K.scalar_rows(field, self.fmt, matrix[:, red])


def _rref_preferring(field, B, used):
    """rref of B with unused columns preferred; returns (matrix, pivots)."""
    n = B.shape[1]
    order = [c for c in range(n) if c not in used] + sorted(used)
    R, rank_, piv = _rref_cols(field, B[:, order])
    inv = np.empty(n, dtype=np.int64)
    inv[np.asarray(order)] = np.arange(n)
    out = R[:, inv]
    pivots = sorted(order[c] for c in piv)
    return out, pivots


def _rref_cols(field, A):
    from .linear import _rref_array

    return _rref_array(field, A)


def information_sets(field, B):
    """Greedy family of information sets from a full-rank k x n basis."""
    k, n = B.shape
    used = set()
    sets = []
    while True:
        M, pivots = _rref_preferring(field, B, used)
        fresh = sum(1 for c in pivots if c not in used)
        if fresh == 0:
            break
        used.update(pivots)
        sets.append(_InfoSet(field, M, pivots, fresh, k))
    return sets


def code_id(G):
    """Stable identifier of the row space: hash of the canonical basis."""
    B = basis(G)
    h = hashlib.sha256()
    h.update(f"q{G.field.q}:n{B.n}:k{B.row_count}:".encode())
    h.update(B.array.tobytes())
    return h.hexdigest()


def _level_cost(k, w, q):
    return math.comb(k, w) * (q - 1) ** (w - 1)


def _run_level(field, iset, q, w, threads, pool):
    """One (set, level) step; returns (best_weight, codeword) or (None, None)."""
    k = iset.table.shape[0]
    nshards = 1 if threads <= 1 else min(2 * threads, max(1, k - w + 1))
    if nshards == 1:
        results = [K.enum_level(iset.fmt, iset.table, q, w, w, 0, 1)]
    else:
        futs = [
            pool.submit(K.enum_level, iset.fmt, iset.table, q, w, w, s, nshards)
            for s in range(nshards)
        ]
        results = [f.result() for f in futs]
    total = sum(r[0] for r in results)
    assert total == _level_cost(k, w, q), "kernel leaf count mismatch"
    best = None
    for _, bw, bm in results:
        if bw is None:
            continue
        if best is None or (bw, bm) < best:
            best = (bw, bm)
    if best is None:
        return None, None
    m = np.frombuffer(best[1], dtype=np.uint8)
    cw = mat_mul(field, m.reshape(1, -1), iset.matrix)[0]
    assert int(np.count_nonzero(cw)) == best[0], "witness weight mismatch"
    return best[0], cw


def _write_checkpoint(path, cid, q, n, k, work, upper, witness, levels):
    lines = ["quasitwist-distance-checkpoint v1", f"id {cid}", f"q {q} n {n} k {k}"]
    lines.append(f"work {work}")
    lines.append(f"upper {upper if upper is not None else '-'}")
    wh = witness.tobytes().hex() if witness is not None else "-"
    lines.append(f"witness {wh}")
    for j, lv in enumerate(levels):
        lines.append(f"level {j} {lv}")
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def _read_checkpoint(path, cid):
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("quasitwist-distance-checkpoint"):
        return None
    st = {"levels": {}}
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key == "id":
            if rest != cid:
                return None
        elif key == "work":
            st["work"] = int(rest)
        elif key == "upper":
            st["upper"] = None if rest == "-" else int(rest)
        elif key == "witness":
            st["witness"] = None if rest == "-" else bytes.fromhex(rest)
        elif key == "level":
            j, lv = rest.split()
            st["levels"][int(j)] = int(lv)
    return st


def min_distance(
    G,
    budget=DEFAULT_BUDGET,
    threads=1,
    wall_limit=None,
    checkpoint=None,
):
    """Certified minimum distance of the row space of G, within a work budget."""
    field = G.field
    q = field.q
    B = basis(G)
    k, n = B.row_count, B.n
    if k == 0:
        raise ZeroCode("zero-dimensional code has no minimum distance")
    start = time.monotonic()

    sets = information_sets(field, B.array)
    sets.sort(key=lambda s: s.slack)  # stable: equal slack keeps discovery order
    levels = [0] * len(sets)
    work = 0
    upper = None
    witness = None

    cid = code_id(G)
    if checkpoint:
        st = _read_checkpoint(checkpoint, cid)
        if st:
            work = st.get("work", 0)
            upper = st.get("upper")
            wb = st.get("witness")
            if wb is not None:
                witness = np.frombuffer(wb, dtype=np.uint8).copy()
            for j, lv in st["levels"].items():
                if j < len(levels):
                    levels[j] = lv

    def lower_now():
        return sum(max(0, lv + 1 - s.slack) for lv, s in zip(levels, sets))

    def result(status):
        up = upper if upper is not None else n
        lo = min(lower_now(), up) if upper is not None else min(lower_now(), n)
        lo = max(lo, 1)
        if status == EXACT:
            lo = up
        return DistanceResult(
            status, lo, up, witness, work, time.monotonic() - start, tuple(levels)
        )

    pool = ThreadPoolExecutor(max_workers=max(1, threads)) if threads > 1 else None
    try:
        while True:
            if upper is not None and lower_now() >= upper:
                return result(EXACT)
            if any(lv == k for lv in levels):
                # a set enumerated every information weight: complete enumeration
                return result(EXACT)
            # next step: cheapest package that raises the bound by one.
            # a set with slack s contributes nothing until its level reaches s,
            # so its package is the whole run of levels up to s.
            best = None
            for j, iset in enumerate(sets):
                nxt = levels[j] + 1
                if nxt > k:
                    continue
                target = max(nxt, iset.slack)
                pcost = sum(_level_cost(k, v, q) for v in range(nxt, target + 1))
                if best is None or (pcost, j) < (best[0], best[1]):
                    best = (pcost, j, nxt, target)
            if best is None:
                return result(EXACT)
            _, j, nxt, target = best
            iset = sets[j]
            for w in range(nxt, target + 1):
                if wall_limit is not None and time.monotonic() - start > wall_limit:
                    return result(BOUNDED)
                cost = _level_cost(k, w, q)
                if work + cost > budget:
                    return result(BUDGET_EXHAUSTED)
                bw, cw = _run_level(field, iset, q, w, threads, pool)
                work += cost
                levels[j] = w
                if bw is not None:
                    if (
                        upper is None
                        or bw < upper
                        or (bw == upper and witness is not None and cw.tobytes() < witness.tobytes())
                    ):
                        upper, witness = bw, cw
                if checkpoint:
                    _write_checkpoint(checkpoint, cid, q, n, k, work, upper, witness, levels)
    finally:
        if pool is not None:
            pool.shutdown(wait=False)


def weight(v):
    return int(np.count_nonzero(np.asarray(v)))


def witness_weight(G, word):
    """Hamming weight of a vector after verifying membership in the code."""
    v = np.asarray(word, dtype=np.uint8)
    if not contains(G, v):
        raise NotACodeword("vector is not in the row space")
    return weight(v)


def weight_distribution_bruteforce(G, cap=ORACLE_CAP):
    """counts[w] = number of codewords of weight w, by full enumeration.

    Scalar classes are enumerated once (leading coefficient normalized), so
    the true cost is (q^k - 1)/(q - 1) row operations.
    """
    field = G.field
    q = field.q
    B = basis(G)
    k, n = B.row_count, B.n
    if q**k > cap:
        raise OracleScaleExceeded(f"q^k = {q}^{k} exceeds cap {cap}")
    counts = np.zeros(n + 1, dtype=np.int64)
    counts[0] = 1
    if k == 0:
        return counts.tolist()

    rows = B.array
    add = field.add_table
    mul = field.mul_table

    # tail tables: T[s] holds the sums of all digit choices on the last s rows
    t_max = 1
    while q ** (t_max + 1) <= 4096 and t_max + 1 <= k - 1:
        t_max += 1
    if k == 1:
        t_max = 0
    tables = [np.zeros((1, n), dtype=np.uint8)]
    for s in range(1, t_max + 1):
        prev = tables[s - 1]
        row = rows[k - s]
        scaled = mul[np.arange(q, dtype=np.uint8)[:, None], row[None, :]]
        tables.append(add[prev[None, :, :], scaled[:, None, :]].reshape(-1, n))

    norm = np.zeros(n + 1, dtype=np.int64)

    def descend(pos, partial, t):
        if pos == k - t:
            block = add[partial[None, :], tables[t]]
            wts = np.count_nonzero(block, axis=1)
            np.add.at(norm, wts, 1)
            return
        for c in range(q):
            descend(pos + 1, add[partial, mul[c, rows[pos]]] if c else partial, t)

    for lead in range(k):
        t = min(t_max, k - 1 - lead)
        descend(lead + 1, rows[lead], t)

    counts += norm * (q - 1)
    return counts.tolist()


def min_distance_bruteforce(G, cap=ORACLE_CAP):
    """Oracle d from the brute-force weight distribution."""
    counts = weight_distribution_bruteforce(G, cap=cap)
    for w, c in enumerate(counts):
        if w > 0 and c:
            return w
    raise ZeroCode("zero-dimensional code has no minimum distance")
