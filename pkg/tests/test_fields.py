import itertools

import pytest

from quasitwist.errors import DivisionByZero, UnsupportedField
from quasitwist.fields import SUPPORTED_Q, field_make


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_ring_axioms_exhaustive(q):
    F = field_make(q)
    els = range(q)
    for x, y in itertools.product(els, els):
        assert F.add(x, y) == F.add(y, x)
        assert F.mul(x, y) == F.mul(y, x)
    for x, y, z in itertools.product(els, els, els):
        assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
        assert F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z))
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_identities_and_inverses(q):
    F = field_make(q)
    for x in range(q):
        assert F.add(x, 0) == x
        assert F.mul(x, 1) == x
        assert F.add(x, F.neg(x)) == 0
        if x:
            assert F.mul(x, F.inv(x)) == 1
    with pytest.raises(DivisionByZero):
        F.inv(0)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_frobenius_is_pth_power_and_additive(q):
    F = field_make(q)
    for x in range(q):
        assert F.frobenius(x) == F.pow(x, F.p)
    for x in range(q):
        for y in range(q):
            assert F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y))
            assert F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y))
    # e applications of Frobenius come back to the identity
    for x in range(q):
        y = x
        for _ in range(F.e):
            y = F.frobenius(y)
        assert y == x


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_multiplicative_orders_divide_group_order(q):
    F = field_make(q)
    orders = [F.multiplicative_order(x) for x in range(1, q)]
    assert all((q - 1) % t == 0 for t in orders)
    # a generator exists
    assert max(orders) == q - 1


def test_gf4_alphabet():
    F = field_make(4)
    assert [F.names[i] for i in range(4)] == ["0", "1", "a", "b"]
    a = F.index_of_name("a")
    b = F.index_of_name("b")
    # b = a^2 = a + 1
    assert F.mul(a, a) == b
    assert F.add(a, 1) == b
    assert F.mul(a, b) == 1


def test_name_round_trip():
    for q in SUPPORTED_Q:
        F = field_make(q)
        for x in range(q):
            assert F.index_of_name(F.names[x]) == x


def test_unsupported_q_rejected():
    with pytest.raises(UnsupportedField):
        field_make(6)
    with pytest.raises(UnsupportedField):
        field_make(11)


def test_field_cache_identity():
    assert field_make(3) is field_make(3)
