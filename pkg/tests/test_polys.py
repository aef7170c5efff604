import random

import pytest

from quasitwist.fields import SUPPORTED_Q, field_make
from quasitwist.polys import (
    Poly,
    binomial,
    binomial_factor,
    extended_gcd,
    factor,
    gcd,
    is_irreducible,
    pow_mod,
    pow_plain,
)

F2 = field_make(2)
F5 = field_make(5)


def rand_poly(field, max_deg, rng):
    d = rng.randrange(max_deg + 1)
    return Poly(field, tuple(rng.randrange(field.q) for _ in range(d + 1)))


def test_construction_normalizes_trailing_zeros():
    p = Poly(F2, (1, 1, 0, 0))
    assert p == Poly(F2, (1, 1))
    assert p.degree == 1
    assert Poly(F2, (0, 0)).is_zero
    assert Poly.zero(F2).degree < 0


def test_divmod_law_random():
    rng = random.Random(42)
    for q in SUPPORTED_Q:
        F = field_make(q)
        for _ in range(60):
            a = rand_poly(F, 8, rng)
            b = rand_poly(F, 5, rng)
            if b.is_zero:
                continue
            quo, rem = divmod(a, b)
            assert quo * b + rem == a
            assert rem.is_zero or rem.degree < b.degree


def test_gcd_divides_both_and_bezout():
    rng = random.Random(7)
    for q in (2, 3, 4, 9):
        F = field_make(q)
        for _ in range(40):
            a = rand_poly(F, 7, rng)
            b = rand_poly(F, 7, rng)
            if a.is_zero and b.is_zero:
                continue
            g = gcd(a, b)
            assert (a % g).is_zero and (b % g).is_zero
            d, u, v = extended_gcd(a, b)
            assert u * a + v * b == d
            assert d == g


def test_pow_mod_matches_plain():
    rng = random.Random(3)
    F = field_make(3)
    mod = binomial(F, 8, 1)
    for _ in range(20):
        f = rand_poly(F, 7, rng)
        e = rng.randrange(1, 30)
        assert pow_mod(f, e, mod) == pow_plain(f, e) % mod


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_factor_reassembles_and_is_irreducible(q):
    rng = random.Random(q)
    F = field_make(q)
    for _ in range(15):
        f = rand_poly(F, 6, rng)
        if f.degree < 1:
            continue
        fact = factor(f)
        assert fact.product() == f
        for phi, e in fact:
            assert phi.is_monic
            assert e >= 1
            assert is_irreducible(phi)


def test_factor_known_binary():
    # x^7 - 1 = (1+x)(1+x+x^3)(1+x^2+x^3)
    fact = binomial_factor(F2, 7, 1)
    got = sorted((tuple(phi.coeffs), e) for phi, e in fact)
    assert got == [((1, 0, 1, 1), 1), ((1, 1), 1), ((1, 1, 0, 1), 1)]


def test_factor_repeated_roots():
    # gcd(m, q) != 1: x^8 - 1 = (1+x)^8 over GF(2)
    fact = binomial_factor(F2, 8, 1)
    assert [(tuple(phi.coeffs), e) for phi, e in fact] == [((1, 1), 8)]
    # x^9 - 1 = (x - 1)^9 over GF(3) (char divides the exponent twice)
    F3 = field_make(3)
    fact = [(tuple(phi.coeffs), e) for phi, e in binomial_factor(F3, 9, 1)]
    assert fact == [((2, 1), 9)]


def test_binomial_shape():
    f = binomial(F5, 4, 2)
    # x^4 - 2 = x^4 + 3
    assert tuple(f.coeffs) == (3, 0, 0, 0, 1)
    assert f.is_monic


def test_binomial_factor_multiplicity_law():
    # over GF(q), p = char: x^(m p^v) - a = (x^m - b)^(p^v) with b^(p^v) = a
    F4 = field_make(4)
    a = F4.index_of_name("a")
    fact = binomial_factor(F4, 6, a)
    prod = Poly.one(F4)
    for phi, e in fact:
        prod = prod * pow_plain(phi, e)
    assert prod == binomial(F4, 6, a)
    assert all(e % 2 == 0 for _, e in fact)  # 6 = 3 * 2, char 2


def test_irreducible_detection():
    assert is_irreducible(Poly(F2, (1, 1, 0, 1)))
    assert not is_irreducible(Poly(F2, (1, 0, 1)))  # (1+x)^2
    assert not is_irreducible(Poly(F2, (1, 1)) * Poly(F2, (1, 1, 1)))
