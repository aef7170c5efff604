import random

import numpy as np
import pytest

from quasitwist.fields import SUPPORTED_Q, field_make
from quasitwist.linear import (
    GeneratorMatrix,
    basis,
    contains,
    dual,
    extend,
    gram,
    is_dual_containing,
    is_lcd,
    is_reversible,
    is_self_orthogonal,
    mat_mul,
    rank,
    rref,
)

F2 = field_make(2)

HAMMING74 = GeneratorMatrix(F2, [
    [1, 0, 0, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 1],
])


def rand_matrix(field, rows, n, rng):
    return GeneratorMatrix(
        field, [[rng.randrange(field.q) for _ in range(n)] for _ in range(rows)]
    )


def test_rref_idempotent_and_rank():
    rng = random.Random(5)
    for q in SUPPORTED_Q:
        F = field_make(q)
        for _ in range(20):
            G = rand_matrix(F, 4, 7, rng)
            R, rk, pivots = rref(G)
            R2, rk2, pivots2 = rref(R)
            assert rk == rk2 and pivots == pivots2
            assert np.array_equal(R.array[:rk], R2.array[:rk2])
            assert rank(basis(G)) == rk


def test_contains_row_space():
    rng = random.Random(9)
    F = field_make(5)
    G = rand_matrix(F, 3, 8, rng)
    B = basis(G).array
    # random combinations are members
    for _ in range(10):
        coefs = np.array([[rng.randrange(5) for _ in range(B.shape[0])]])
        v = mat_mul(F, coefs, B)
        assert contains(G, v)
    # a vector outside: extend the basis by any non-member pivot trick
    if rank(G) < 8:
        out = np.zeros((1, 8), dtype=np.uint8)
        _, _, pivots = rref(G)
        free = [c for c in range(8) if c not in pivots]
        out[0, free[0]] = 1
        assert not contains(G, out)


def test_dual_dimensions_and_orthogonality():
    rng = random.Random(11)
    for q in (2, 3, 4, 9):
        F = field_make(q)
        G = rand_matrix(F, 4, 9, rng)
        D = dual(G)
        assert rank(G) + rank(D) == 9
        prod = mat_mul(F, basis(G).array, basis(D).array.T)
        assert not prod.any()


def test_hamming_is_dual_containing_not_lcd():
    assert is_dual_containing(HAMMING74)
    assert not is_lcd(HAMMING74)
    # its dual (the simplex code) is self-orthogonal
    assert is_self_orthogonal(dual(HAMMING74))


def test_even_weight_code_is_lcd():
    G = GeneratorMatrix(F2, [[1, 1, 0], [0, 1, 1]])
    assert is_lcd(G)
    assert not is_dual_containing(G)
    assert not is_self_orthogonal(G)


def test_repetition_code_gf2_self_orthogonal():
    G = GeneratorMatrix(F2, [[1, 1, 1, 1]])
    assert is_self_orthogonal(G)
    assert not is_lcd(G)
    g = gram(G)
    assert g.shape == (1, 1) and g[0, 0] == 0


def test_reversible():
    G = GeneratorMatrix(F2, [[1, 0, 1], [0, 1, 0]])
    assert is_reversible(G)
    H = GeneratorMatrix(F2, [[1, 1, 0]])
    assert not is_reversible(H)


def test_extend_parity():
    E = extend(HAMMING74)
    assert E.array.shape == (4, 8)
    F = E.field
    from quasitwist.linear import field_sum

    # every row of the extended basis sums to zero
    assert not field_sum(F, E.array, axis=1).any()
    # extension of the [7,4] Hamming code is the [8,4,4] code
    from quasitwist.distance import min_distance

    assert min_distance(E).upper == 4


def test_extend_nonbinary():
    F = field_make(5)
    G = GeneratorMatrix(F, [[1, 2, 3]])
    E = extend(G)
    from quasitwist.linear import field_sum

    assert not field_sum(F, E.array, axis=1).any()


def test_lcd_gram_criterion_matches_hull():
    # is_lcd iff hull is trivial iff the Gram matrix of a basis is invertible
    rng = random.Random(23)
    for q in (2, 3, 7):
        F = field_make(q)
        for _ in range(25):
            G = rand_matrix(F, 3, 6, rng)
            if rank(G) == 0:
                continue
            B = basis(G)
            D = dual(B)
            hull_rank = rank(GeneratorMatrix(F, np.vstack([B.array, D.array])))
            hull_trivial = hull_rank == rank(B) + rank(D)
            assert is_lcd(G) == hull_trivial
