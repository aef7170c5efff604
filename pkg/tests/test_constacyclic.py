import random

import numpy as np
import pytest

from quasitwist.constacyclic import (
    TwistulantBlock,
    cc_enumerate,
    cc_make,
    cc_min_distance,
    cc_shift,
    poly_from_vector,
    twistulant_expand,
    vector_from_poly,
)
from quasitwist.distance import min_distance_bruteforce
from quasitwist.errors import InvalidShiftConstant, NotADivisor, NotMonic
from quasitwist.fields import field_make
from quasitwist.linear import contains, rank
from quasitwist.polys import Poly, binomial

F2 = field_make(2)
F3 = field_make(3)
F4 = field_make(4)


def test_shift_moves_last_to_front_scaled():
    F = field_make(5)
    v = np.array([1, 2, 3, 4], dtype=np.uint8)
    out = cc_shift(F, v, 2)
    # a * v3 = 2 * 4 = 3 mod 5
    assert out.tolist() == [3, 1, 2, 3]


def test_shift_is_multiplication_by_x():
    # shifting the coefficient vector = multiplying the polynomial by x
    rng = random.Random(2)
    for q, m, a in ((2, 7, 1), (3, 6, 2), (4, 5, 2), (5, 8, 3)):
        F = field_make(q)
        mod = binomial(F, m, a)
        for _ in range(10):
            v = np.array([rng.randrange(q) for _ in range(m)], dtype=np.uint8)
            shifted = cc_shift(F, v, a)
            prod = (Poly.x(F) * poly_from_vector(F, v)) % mod
            assert shifted.tolist() == vector_from_poly(prod, m).tolist()


def test_vector_poly_round_trip():
    p = Poly(F3, (1, 0, 2))
    v = vector_from_poly(p, 5)
    assert v.tolist() == [1, 0, 2, 0, 0]
    assert poly_from_vector(F3, v) == p


def test_cc_make_validates():
    with pytest.raises(NotADivisor):
        cc_make(F2, 7, 1, Poly(F2, (1, 0, 1)))  # x^2+1 does not divide x^7-1
    with pytest.raises(NotMonic):
        cc_make(F3, 4, 1, Poly(F3, (1, 2)))
    with pytest.raises(InvalidShiftConstant):
        cc_make(F2, 7, 0, Poly.one(F2))


def test_membership_check_polynomial_law():
    C = cc_make(F2, 7, 1, Poly(F2, (1, 1, 0, 1)))
    G = C.generator_matrix()
    assert C.k == 4
    for row in G.array:
        assert C.contains(row)
        assert C.contains(cc_shift(F2, row, 1))
    bad = np.zeros(7, dtype=np.uint8)
    bad[0] = 1
    assert not C.contains(bad)


def test_generator_matrix_spans_code():
    # row space of the twistulant expansion = polynomial multiples of g
    rng = random.Random(4)
    mod = binomial(F3, 8, 2)
    for C in cc_enumerate(F3, 8, 2):
        G = C.generator_matrix()
        assert rank(G) == C.k
        for _ in range(10):
            u = Poly(F3, tuple(rng.randrange(3) for _ in range(C.k)))
            w = vector_from_poly((u * C.g) % mod, 8)
            assert contains(G, w)


@pytest.mark.parametrize(
    "q,m,a,count",
    [
        (2, 7, 1, 7),    # 3 irreducible factors -> 2^3 divisors, zero excluded
        (2, 8, 1, 8),    # (1+x)^8 -> 9 divisors, zero excluded
        (3, 4, 2, 3),    # x^4 - 2 = (x^2+x+2)(x^2+2x+2) over GF(3)
        (5, 4, 2, 1),    # irreducible
    ],
)
def test_enumerate_counts(q, m, a, count):
    F = field_make(q)
    codes = cc_enumerate(F, m, a)
    assert len(codes) == count
    assert len(cc_enumerate(F, m, a, include_zero=True)) == count + 1
    # sorted canonically and k consistent
    for c in codes:
        assert c.k == m - c.g.degree


def test_twistulant_block_rows():
    block = TwistulantBlock(F2, Poly(F2, (1, 1)), 4, 1, 3)
    M = twistulant_expand(block).array
    assert M.tolist() == [
        [1, 1, 0, 0],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
    ]


def test_twistulant_wraps_with_constant():
    F5 = field_make(5)
    block = TwistulantBlock(F5, Poly(F5, (0, 0, 0, 1)), 4, 3, 2)
    M = twistulant_expand(block).array
    # x^3 shifted once wraps: becomes 3 * x^0
    assert M.tolist()[1] == [3, 0, 0, 0]


def test_cc_min_distance_matches_bruteforce():
    for q in (2, 3, 5):
        F = field_make(q)
        for m in (6, 7, 8):
            for a in range(1, min(q, 4)):
                for C in cc_enumerate(F, m, a):
                    if C.k > 10:
                        continue
                    s = cc_min_distance(C)
                    brute = min_distance_bruteforce(C.generator_matrix())
                    assert s.d_lower == s.d_upper == brute


def test_cc_min_distance_cached():
    C = cc_make(F2, 7, 1, Poly(F2, (1, 1, 0, 1)))
    assert cc_min_distance(C).d_upper == 3
    assert cc_min_distance(C).d_upper == 3  # second call hits the cache
