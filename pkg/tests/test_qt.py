import random

import numpy as np
import pytest

from quasitwist.constacyclic import cc_enumerate, cc_min_distance
from quasitwist.distance import min_distance_bruteforce, witness_weight
from quasitwist.errors import DimensionDefect, PreconditionFailed
from quasitwist.fields import field_make
from quasitwist.linear import contains, mat_mul
from quasitwist.polys import Poly, binomial, gcd
from quasitwist.qt import (
    ONE_GEN,
    TWO_GEN_IDENTITY_G1,
    TWO_GEN_P1,
    TWO_GEN_SHIFTED,
    qt_1gen_bound,
    qt_2gen_bound,
    qt_2gen_shifted_make,
    qt_assemble,
    qt_shift,
    spec_1gen,
    spec_2gen,
    tightness_witness,
)

F2 = field_make(2)
F3 = field_make(3)


def sample_f(rng, field, h, allow_zero=False):
    d = int(h.degree)
    while True:
        f = Poly(field, tuple(rng.randrange(field.q) for _ in range(d)))
        if allow_zero and f.is_zero:
            return f
        if not f.is_zero and gcd(f, h).degree == 0:
            return f


def random_1gen_spec(rng, q, m, ell):
    F = field_make(q)
    a = rng.randrange(1, q)
    codes = [c for c in cc_enumerate(F, m, a) if c.k >= 1]
    C = rng.choice(codes)
    f1 = tuple(sample_f(rng, F, C.h) for _ in range(ell))
    return spec_1gen(F, m, a, C.g, f1)


def random_p1_spec(rng, q, m, ell):
    F = field_make(q)
    a = rng.randrange(1, q)
    codes = [c for c in cc_enumerate(F, m, a) if c.k >= 1]
    C = rng.choice(codes)
    f1 = tuple(sample_f(rng, F, C.h) for _ in range(ell))
    f2 = tuple(
        sample_f(rng, F, C.h, allow_zero=(j == 0)) for j in range(ell)
    )
    return spec_2gen(F, m, a, C.g, Poly.one(F), f1, f2, form=TWO_GEN_P1)


def test_qt_shift_definition():
    F = field_make(5)
    v = np.array([1, 2, 3, 4, 0, 2], dtype=np.uint8)
    out = qt_shift(F, v, 2, 3)
    # last ell=2 coordinates scaled by a=3 and moved to the front
    assert out.tolist() == [0, 1, 1, 2, 3, 4]


def test_row_space_closed_under_qt_shift():
    # the invariant that pins the column layout
    rng = random.Random(31)
    for q, m, ell in ((2, 7, 2), (2, 6, 3), (3, 6, 2), (5, 4, 3), (4, 5, 2)):
        for _ in range(5):
            spec = random_p1_spec(rng, q, m, ell)
            try:
                code = qt_assemble(spec)
            except DimensionDefect:
                continue
            G = code.matrix
            for row in G.array:
                assert contains(G, qt_shift(G.field, row, ell, spec.a))


def test_one_gen_shape_and_dimension():
    rng = random.Random(7)
    for _ in range(20):
        spec = random_1gen_spec(rng, 3, 6, 3)
        code = qt_assemble(spec)
        assert code.n == 18
        assert code.rank == spec.k1 == 6 - spec.g.degree
        assert code.k2 == 0


def test_two_gen_p1_doubles_dimension():
    rng = random.Random(8)
    for _ in range(20):
        spec = random_p1_spec(rng, 2, 7, 2)
        try:
            code = qt_assemble(spec)
        except DimensionDefect:
            continue
        assert code.rank == 2 * spec.k1


def test_validation_rejects_bad_specs():
    one = Poly.one(F2)
    g = Poly(F2, (1, 1))
    h_bad = Poly(F2, (1, 0, 1))  # not a divisor of x^7 - 1
    with pytest.raises(PreconditionFailed):
        spec_1gen(F2, 7, 1, h_bad, (one,)).validate()
    # f too large
    big = Poly.x(F2).shift_up(10)
    with pytest.raises(PreconditionFailed):
        spec_1gen(F2, 7, 1, g, (big,)).validate()
    # gcd violation: f = h kills the block
    h = binomial(F2, 7, 1) // g
    with pytest.raises(PreconditionFailed):
        spec_1gen(F2, 7, 1, g, (h,)).validate()
    # zero code
    with pytest.raises(PreconditionFailed):
        spec_1gen(F2, 7, 1, binomial(F2, 7, 1), (one,)).validate()
    # wrong f1 arity vs ell is impossible by construction; f2 arity is not
    with pytest.raises(PreconditionFailed):
        spec_2gen(F2, 7, 1, g, one, (one, one), (one,), form=TWO_GEN_P1).validate()
    # TwoGenP1 demands p = 1
    with pytest.raises(PreconditionFailed):
        spec_2gen(F2, 7, 1, g, g, (one, one), (one, one), form=TWO_GEN_P1).validate()


def test_one_gen_floor_holds_and_uses_base_distance():
    rng = random.Random(17)
    for _ in range(30):
        spec = random_1gen_spec(rng, 2, 7, 2)
        code = qt_assemble(spec)
        floor = qt_1gen_bound(spec)
        base = cc_min_distance(
            [c for c in cc_enumerate(F2, 7, spec.a) if c.g == spec.g][0]
        ).d_upper
        assert floor == 2 * base
        assert min_distance_bruteforce(code.matrix) >= floor


def test_two_gen_floor_holds():
    rng = random.Random(19)
    for _ in range(30):
        spec = random_p1_spec(rng, 3, 4, 2)
        try:
            code = qt_assemble(spec)
        except DimensionDefect:
            continue
        floor = qt_2gen_bound(spec)
        assert min_distance_bruteforce(code.matrix) >= floor


def test_identity_g1_form():
    # first generator block is the full ambient code, second is scaled by g2
    F = F2
    one = Poly.one(F)
    g2 = Poly(F, (1, 1))
    f1 = (one, Poly(F, (1, 1, 1)))
    f2 = (Poly.zero(F), one)
    spec = spec_2gen(F, 7, 1, one, g2, f1, f2, form=TWO_GEN_IDENTITY_G1)
    code = qt_assemble(spec)
    assert code.k1 == 7 and code.k2 == 6
    assert code.rank == 13
    assert code.n == 14


def test_shifted_form_second_row_is_block_rotation():
    rng = random.Random(23)
    for _ in range(10):
        F = F3
        a = rng.randrange(1, 3)
        codes = [c for c in cc_enumerate(F, 5, a) if 1 <= c.k <= 4]
        C = rng.choice(codes)
        f1 = tuple(sample_f(rng, F, C.h) for _ in range(3))
        try:
            code = qt_2gen_shifted_make(F, 5, a, C.g, f1)
        except DimensionDefect:
            continue
        assert code.spec.form == TWO_GEN_SHIFTED
        assert code.rank == 2 * code.k1
        # rotating the blocks by one position (wrapped block times x) is,
        # in the interleaved layout, the twisted shift by a single column
        G = code.matrix.array
        first = G[0]
        second = G[code.k1]
        v = qt_shift(F, first, 1, a)
        assert second.tolist() == v.tolist()


def test_tightness_witness_weight_is_base_distance():
    # equal f-lists except a zeroed leading entry force a weight-d(C_g) word
    rng = random.Random(29)
    produced = 0
    while produced < 25:
        F = field_make(rng.choice((2, 3, 5)))
        m = rng.choice((4, 5, 6, 7))
        a = rng.randrange(1, F.q)
        codes = [c for c in cc_enumerate(F, m, a) if 1 <= c.k < m]
        if not codes:
            continue
        C = rng.choice(codes)
        ell = rng.choice((2, 3))
        shared = tuple(sample_f(rng, F, C.h) for _ in range(ell - 1))
        f10 = sample_f(rng, F, C.h)
        f1 = (f10,) + shared
        f2 = (Poly.zero(F),) + shared
        spec = spec_2gen(F, m, a, C.g, Poly.one(F), f1, f2, form=TWO_GEN_P1)
        try:
            code = qt_assemble(spec)
        except DimensionDefect:
            continue
        w = tightness_witness(spec)
        base = cc_min_distance(C).d_upper
        assert witness_weight(code.matrix, w) == base
        assert min_distance_bruteforce(code.matrix) == base
        produced += 1


def test_tightness_witness_requires_matching_tails():
    one = Poly.one(F2)
    g = Poly(F2, (1, 1))
    f1 = (one, Poly(F2, (1, 1, 1)))
    f2 = (Poly.zero(F2), one)  # tail differs from f1
    spec = spec_2gen(F2, 7, 1, g, one, f1, f2, form=TWO_GEN_P1)
    with pytest.raises(PreconditionFailed):
        tightness_witness(spec)


def test_distance_floor_recorded_on_code():
    rng = random.Random(37)
    spec = random_1gen_spec(rng, 2, 7, 3)
    code = qt_assemble(spec)
    assert code.distance_floor == qt_1gen_bound(spec)
    assert code.distance_floor >= 2
