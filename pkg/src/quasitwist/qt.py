"""1- and 2-generator quasi-twisted codes.

A QT code of index ell and length n = m*ell is built from polynomial rows
over F_q[x]/(x^m - a).  The 1-generator form takes rows (f_1*g, ..., f_ell*g)
with gcd(f_j, h) = 1 where h = (x^m - a)/g; its dimension is k1 = m - deg g
and its distance is at least ell * d(C_g).  The 2-generator form adds a
second row (0, p*g*f2_2, ..., p*g*f2_ell) with p | h1, gcd(f2_j, h2) = 1,
h2 = (x^m - a)/(p*g); the dimension is k1 + k2 with k2 = m - deg(p*g) and
the distance is at least d(C_g).

Five spec forms are distinguished because the search treats them differently:

  OneGen           single generator row
  TwoGenGeneral    arbitrary p | h1
  TwoGenP1         p = 1, so k = 2*k1
  TwoGenIdentityG1 g = 1 (k1 = m) and the second generator's base is p alone
  TwoGenShifted    second row is the block rotation of the first with the
                   wrapped block multiplied by x; no dimension or distance
                   theorem applies, so everything is verified computationally

Assembled matrices use the coordinate order in which the defining shift
acts: position i*ell + j carries coefficient i of block j, so membership is
preserved by qt_shift(., ell, a).

Rank is always verified; a shortfall raises DimensionDefect (or flags the
returned code when allow_defect is set) and is never silently accepted.
"""

from dataclasses import dataclass

import numpy as np

from .constacyclic import (
    TwistulantBlock,
    cc_make,
    cc_min_distance,
    twistulant_expand,
    vector_from_poly,
)
from .distance import min_distance
from .errors import DimensionDefect, InvalidIndex, InvalidShiftConstant, PreconditionFailed
from .linear import GeneratorMatrix, rank
from .polys import Poly, binomial, extended_gcd, gcd

ONE_GEN = "OneGen"
TWO_GEN_GENERAL = "TwoGenGeneral"
TWO_GEN_P1 = "TwoGenP1"
TWO_GEN_IDENTITY_G1 = "TwoGenIdentityG1"
TWO_GEN_SHIFTED = "TwoGenShifted"

FORMS = (ONE_GEN, TWO_GEN_GENERAL, TWO_GEN_P1, TWO_GEN_IDENTITY_G1, TWO_GEN_SHIFTED)


def qt_shift(field, v, ell, a):
    """(c_0..c_{n-1}) -> (a*c_{n-ell}, ..., a*c_{n-1}, c_0, ..., c_{n-ell-1})."""
    if a == 0:
        raise InvalidShiftConstant("shift constant must be nonzero")
    v = np.asarray(v, dtype=np.uint8)
    n = v.shape[0]
    if ell < 1 or n % ell:
        raise InvalidIndex(f"index {ell} does not divide length {n}")
    return np.concatenate([field.mul_table[a, v[n - ell :]], v[: n - ell]])


@dataclass(frozen=True)
class QTGeneratorSpec:
    form: str
    field: object
    m: int
    ell: int
    a: int
    g: Poly
    p: Poly
    f1: tuple
    f2: tuple

    @property
    def n(self):
        return self.m * self.ell

    def modulus(self):
        return binomial(self.field, self.m, self.a)

    def h1(self):
        return self.modulus() // self.g

    def h2(self):
        return self.modulus() // (self.p * self.g)

    @property
    def k1(self):
        return self.m - int(self.g.degree)

    @property
    def k2(self):
        if self.form == ONE_GEN:
            return 0
        if self.form == TWO_GEN_SHIFTED:
            return self.k1
        return self.m - int((self.p * self.g).degree)

    def validate(self):
        """Check the construction's preconditions; raises PreconditionFailed."""
        F = self.field
        if self.form not in FORMS:
            raise PreconditionFailed(f"unknown form {self.form!r}")
        if self.a == 0:
            raise PreconditionFailed("shift constant must be nonzero")
        if self.ell < 1:
            raise PreconditionFailed("index must be at least 1")
        if len(self.f1) != self.ell:
            raise PreconditionFailed("f1 must have one polynomial per block")
        mod = self.modulus()
        if not self.g.is_monic or not (mod % self.g).is_zero:
            raise PreconditionFailed(f"g = {self.g!r} must be a monic divisor of x^{self.m} - a")
        if self.k1 < 1:
            raise PreconditionFailed("g = x^m - a generates the zero code")
        h1 = self.h1()
        for j, f in enumerate(self.f1):
            if f.degree >= h1.degree:
                raise PreconditionFailed(f"deg f1[{j}] must be < deg h1 = {h1.degree}")
            if gcd(f, h1).degree != 0:
                raise PreconditionFailed(f"gcd(f1[{j}], h1) != 1")
        if self.form == ONE_GEN:
            if self.f2:
                raise PreconditionFailed("1-generator spec carries no f2")
            if self.p != Poly.one(F):
                raise PreconditionFailed("1-generator spec carries no p")
            return
        if self.form == TWO_GEN_SHIFTED:
            if self.f2:
                raise PreconditionFailed("shifted form derives its second row from f1")
            return
        if self.form == TWO_GEN_P1 and self.p != Poly.one(F):
            raise PreconditionFailed("TwoGenP1 requires p = 1")
        if self.form == TWO_GEN_IDENTITY_G1 and self.g != Poly.one(F):
            raise PreconditionFailed("TwoGenIdentityG1 requires g = 1")
        if not self.p.is_monic or not (h1 % self.p).is_zero:
            raise PreconditionFailed(f"p = {self.p!r} must be a monic divisor of h1")
        if self.k2 < 1:
            raise PreconditionFailed("p*g = x^m - a makes the second block empty")
        if len(self.f2) != self.ell:
            raise PreconditionFailed("f2 must have one polynomial per block")
        h2 = self.h2()
        for j, f in enumerate(self.f2):
            if j == 0 and f.is_zero:
                continue  # the conventional zero leading block
            if f.degree >= h2.degree:
                raise PreconditionFailed(f"deg f2[{j}] must be < deg h2 = {h2.degree}")
            if gcd(f, h2).degree != 0:
                raise PreconditionFailed(f"gcd(f2[{j}], h2) != 1")


def spec_1gen(field, m, a, g, f1):
    return QTGeneratorSpec(ONE_GEN, field, m, len(f1), a, g, Poly.one(field), tuple(f1), ())


def spec_2gen(field, m, a, g, p, f1, f2, form=TWO_GEN_GENERAL):
    return QTGeneratorSpec(form, field, m, len(f1), a, g, p, tuple(f1), tuple(f2))


@dataclass(frozen=True)
class QTCode:
    spec: QTGeneratorSpec
    matrix: GeneratorMatrix
    k1: int
    k2: int
    distance_floor: int
    rank: int

    @property
    def dimension(self):
        return self.k1 + self.k2

    @property
    def dimension_defect(self):
        return self.rank != self.dimension

    @property
    def n(self):
        return self.spec.n


def _row_polys(spec):
    """The polynomial rows of the generator display, reduced mod x^m - a."""
    mod = spec.modulus()
    row1 = [(spec.g * f) % mod for f in spec.f1]
    if spec.form == ONE_GEN:
        return [row1]
    if spec.form == TWO_GEN_SHIFTED:
        x = Poly.x(spec.field)
        row2 = [(x * row1[-1]) % mod] + row1[:-1]
        return [row1, row2]
    pg = spec.p * spec.g
    row2 = [(pg * f) % mod for f in spec.f2]
    return [row1, row2]


def _expand_rows(spec, row_polys, counts):
    blocks = []
    for polys, rows in zip(row_polys, counts):
        if rows < 1:
            continue
        stripes = [
            twistulant_expand(TwistulantBlock(spec.field, p, spec.m, spec.a, rows)).array
            for p in polys
        ]
        blocks.append(np.hstack(stripes))
    A = np.vstack(blocks)
    # Coordinate i*ell + j carries coefficient i of block j.  Writing the
    # blocks side by side instead would break closure under qt_shift: the
    # index-ell twisted shift advances every block polynomial by x only when
    # same-degree coefficients sit together.
    n = spec.n
    cols = [(t % spec.ell) * spec.m + (t // spec.ell) for t in range(n)]
    return GeneratorMatrix(spec.field, A[:, cols])


def qt_assemble(spec, allow_defect=False, distance_floor=None):
    """Assemble and rank-check the QT generator matrix.

    Row block 1 holds the k1 twistulant expansions of the g*f1[j] rows, row
    block 2 (when present) the k2 expansions of the second polynomial row.
    Columns are ordered so that coefficient i of block j sits at position
    i*ell + j, which makes the row space closed under qt_shift(., ell, a).
    """
    spec.validate()
    rows = _row_polys(spec)
    M = _expand_rows(spec, rows, (spec.k1, spec.k2))
    rk = rank(M)
    if distance_floor is None:
        if spec.form == ONE_GEN:
            distance_floor = qt_1gen_bound(spec)
        elif spec.form == TWO_GEN_SHIFTED:
            distance_floor = 1
        else:
            distance_floor = qt_2gen_bound(spec)
    code = QTCode(spec, M, spec.k1, spec.k2, distance_floor, rk)
    if code.dimension_defect and not allow_defect:
        raise DimensionDefect(
            f"assembled rank {rk} != k1 + k2 = {spec.k1 + spec.k2}", rank=rk
        )
    return code


def _base_cc_distance(spec, budget=None):
    C = cc_make(spec.field, spec.m, spec.a, spec.g)
    s = cc_min_distance(C, budget=budget)
    if s.d_exact is None:
        raise PreconditionFailed("base CC distance did not certify within budget")
    return s.d_exact


def qt_1gen_bound(spec, budget=None):
    """Theorem floor ell * d(C_g) for a valid 1-generator spec."""
    if spec.form != ONE_GEN:
        raise PreconditionFailed("1-generator bound needs a OneGen spec")
    spec.validate()
    return spec.ell * _base_cc_distance(spec, budget)


def qt_2gen_bound(spec, budget=None):
    """Theorem floor d(C_g) for a valid 2-generator spec."""
    if spec.form not in (TWO_GEN_GENERAL, TWO_GEN_P1, TWO_GEN_IDENTITY_G1):
        raise PreconditionFailed("2-generator bound needs a two-generator theorem form")
    spec.validate()
    return _base_cc_distance(spec, budget)


def qt_2gen_shifted_make(field, m, a, g, f1, allow_defect=False):
    """Second row = block rotation of the first, wrapped block times x."""
    spec = QTGeneratorSpec(
        TWO_GEN_SHIFTED, field, m, len(f1), a, g, Poly.one(field), tuple(f1), ()
    )
    return qt_assemble(spec, allow_defect=allow_defect)


def tightness_witness(spec):
    """The explicit codeword of weight exactly d(C_g) when the floor is tight.

    Requires the p = 1 form with matching f1[j] = f2[j] for j >= 1 and
    f2[0] = 0: messages (r, -r) then cancel every block except the first,
    leaving r*g*f1[0], and r can be chosen to hit a minimum-weight multiple
    of g.
    """
    if spec.form != TWO_GEN_P1:
        raise PreconditionFailed("tightness construction requires p = 1")
    spec.validate()
    if not spec.f2 or not spec.f2[0].is_zero:
        raise PreconditionFailed("tightness construction requires f2[0] = 0")
    if any(spec.f1[j] != spec.f2[j] for j in range(1, spec.ell)):
        raise PreconditionFailed("tightness construction requires f1[j] = f2[j] for j >= 1")
    F = spec.field
    mod = spec.modulus()
    C = cc_make(F, spec.m, spec.a, spec.g)
    # recover a min-weight multiple of g as the block-0 target
    r_full = min_distance(C.generator_matrix())
    w_poly = Poly(F, [int(c) for c in r_full.witness])
    u, rem = divmod(w_poly, spec.g)
    if not rem.is_zero:
        raise PreconditionFailed("distance witness is not a multiple of g")
    h1 = spec.h1()
    d0, inv_f, _ = extended_gcd(spec.f1[0], h1)
    if d0.degree != 0:
        raise PreconditionFailed("f1[0] is not invertible mod h1")
    r = (u * inv_f) % h1
    # codeword = r*(row1) - r*(row2); blocks j >= 1 cancel, block 0 = r*g*f1[0]
    block0 = (r * spec.g * spec.f1[0]) % mod
    out = np.zeros(spec.n, dtype=np.uint8)
    out[:: spec.ell] = vector_from_poly(block0, spec.m)
    return out
