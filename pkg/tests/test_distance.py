import random

import numpy as np
import pytest

from quasitwist import _kernels as K
from quasitwist._kernels import pykernel
from quasitwist.distance import (
    min_distance,
    min_distance_bruteforce,
    weight,
    weight_distribution_bruteforce,
    witness_weight,
)
from quasitwist.errors import NotACodeword, OracleScaleExceeded, ZeroCode
from quasitwist.fields import field_make
from quasitwist.linear import GeneratorMatrix

F2 = field_make(2)


def rand_code(rng, q, n, k):
    F = field_make(q)
    while True:
        G = GeneratorMatrix(
            F, [[rng.randrange(q) for _ in range(n)] for _ in range(k)]
        )
        if not min(G.array.shape) or G.array.any():
            return G


def test_weight_distribution_small():
    G = GeneratorMatrix(F2, [[1, 1, 0], [0, 1, 1]])
    assert weight_distribution_bruteforce(G) == [1, 0, 3, 0]


def test_weight_distribution_hamming():
    G = GeneratorMatrix(F2, [
        [1, 0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ])
    wd = weight_distribution_bruteforce(G)
    assert wd[0] == 1 and wd[3] == 7 and wd[4] == 7 and wd[7] == 1
    assert sum(wd) == 16


def test_weight_distribution_zero_dimension():
    # only the zero word: counts[0] = 1 and nothing anywhere else
    G = GeneratorMatrix(F2, np.zeros((1, 4), dtype=np.uint8))
    wd = weight_distribution_bruteforce(G)
    assert wd[0] == 1 and sum(wd) == 1


def test_oracle_cap():
    rng = random.Random(1)
    G = rand_code(rng, 5, 30, 25)
    with pytest.raises(OracleScaleExceeded):
        weight_distribution_bruteforce(G)


def test_zero_code_raises():
    G = GeneratorMatrix(F2, np.zeros((2, 5), dtype=np.uint8))
    with pytest.raises(ZeroCode):
        min_distance(G)


def test_matches_bruteforce_sampled():
    rng = random.Random(99)
    for _ in range(120):
        q = rng.choice((2, 3, 5, 7))
        n = rng.randrange(6, 16)
        k = rng.randrange(1, min(n, 8))
        G = rand_code(rng, q, n, k)
        res = min_distance(G)
        assert res.is_exact
        assert res.upper == min_distance_bruteforce(G)
        assert weight(res.witness) == res.upper


def test_witness_is_always_a_codeword():
    rng = random.Random(5)
    for _ in range(30):
        G = rand_code(rng, 3, 12, 5)
        res = min_distance(G)
        assert witness_weight(G, res.witness) == res.upper


def test_witness_weight_rejects_non_members():
    G = GeneratorMatrix(F2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    with pytest.raises(NotACodeword):
        witness_weight(G, np.array([1, 0, 0, 0], dtype=np.uint8))
    assert witness_weight(G, np.zeros(4, dtype=np.uint8)) == 0
    assert witness_weight(G, G.array[0]) == 2


def test_lower_bound_monotone_in_budget():
    rng = random.Random(55)
    G = rand_code(rng, 2, 40, 20)
    budgets = [10**2, 10**3, 10**4, 10**5, 10**6]
    lowers = [min_distance(G, budget=b).lower for b in budgets]
    assert lowers == sorted(lowers)
    uppers = [min_distance(G, budget=b).upper for b in budgets]
    assert uppers == sorted(uppers, reverse=True)


def test_bounds_sandwich_exact_value():
    rng = random.Random(60)
    G = rand_code(rng, 2, 22, 10)
    d = min_distance_bruteforce(G)
    for b in (10**2, 10**4, 10**6):
        res = min_distance(G, budget=b)
        assert res.lower <= d <= res.upper


def test_thread_count_does_not_change_result():
    rng = random.Random(77)
    for _ in range(10):
        q = rng.choice((2, 3, 5))
        G = rand_code(rng, q, 18, 8)
        results = [min_distance(G, threads=t) for t in (1, 2, 8)]
        assert len({r.upper for r in results}) == 1
        assert len({r.lower for r in results}) == 1
        assert all(r.is_exact for r in results)


def test_even_weight_subcode_reports_even_d():
    # rows built from the all-even [m, m-1] cyclic base stay even
    from quasitwist.polys import Poly, binomial, gcd
    from quasitwist.qt import qt_assemble, spec_1gen

    rng = random.Random(3)
    g = Poly(F2, (1, 1))
    h = binomial(F2, 7, 1) // g
    for _ in range(10):
        f1 = []
        while len(f1) < 3:
            f = Poly(F2, tuple(rng.randrange(2) for _ in range(6)))
            if gcd(f, h).degree == 0:
                f1.append(f)
        spec = spec_1gen(F2, 7, 1, g, tuple(f1))
        code = qt_assemble(spec)
        res = min_distance(code.matrix)
        assert res.upper % 2 == 0


def test_checkpoint_resume(tmp_path):
    rng = random.Random(42)
    G = rand_code(rng, 2, 40, 20)
    ck = tmp_path / "ck.txt"
    partial = min_distance(G, budget=10**4, checkpoint=str(ck))
    assert ck.exists()
    resumed = min_distance(G, budget=10**6, checkpoint=str(ck))
    fresh = min_distance(G, budget=10**6)
    assert resumed.upper == fresh.upper
    assert resumed.lower >= partial.lower


def test_pure_kernel_matches_loaded_backend():
    # same leaves, same best weight, same witness message on every level
    rng = random.Random(13)
    for q in (2, 3, 4, 5, 7, 9):
        F = field_make(q)
        k, r = 5, 9
        S_rows = np.array(
            [[rng.randrange(q) for _ in range(r)] for _ in range(k)],
            dtype=np.uint8,
        )
        fmt = K.pack_format(F, r)
        S = K.scalar_rows(F, fmt, S_rows)
        for w in (1, 2, 3):
            got = K.enum_level(fmt, S, q, w, w, 0, 1)
            ref = pykernel.enum_level(fmt, S, q, w, w, 0, 1)
            assert got[0] == ref[0]
            assert got[1] == ref[1]
            assert list(got[2]) == list(ref[2])


def test_pack_round_trip():
    rng = random.Random(21)
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = field_make(q)
        rows = np.array(
            [[rng.randrange(q) for _ in range(19)] for _ in range(4)],
            dtype=np.uint8,
        )
        fmt = K.pack_format(F, 19)
        packed = K.pack_rows(fmt, rows)
        assert np.array_equal(K.unpack_rows(fmt, packed), rows)
        wt = K.weights(fmt, packed)
        assert wt.tolist() == [int((r != 0).sum()) for r in rows]
