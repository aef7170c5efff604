"""Constacyclic codes of length m with shift constant a.

A constacyclic code is an ideal of F_q[x]/(x^m - a), generated by a monic
divisor g of x^m - a.  Its generator matrix is the twistulant matrix of g:
each row the constacyclic shift of the one above.
"""

import itertools

from dataclasses import dataclass

import numpy as np

from .distance import min_distance
from .errors import EmptyBlock, InvalidShiftConstant, NotADivisor, NotMonic
from .linear import CodeSummary, GeneratorMatrix
from .polys import Poly, binomial, binomial_factor, pow_plain


def vector_from_poly(p, m):
    """Length-m coefficient vector of a polynomial with deg < m."""
    v = np.zeros(m, dtype=np.uint8)
    for i, c in enumerate(p.coeffs):
        v[i] = c
    return v


def poly_from_vector(field, v):
    return Poly(field, [int(c) for c in v])


def cc_shift(field, v, a):
    """pi_a: (c_0, ..., c_{m-1}) -> (a*c_{m-1}, c_0, ..., c_{m-2})."""
    if a == 0:
        raise InvalidShiftConstant("shift constant must be nonzero")
    v = np.asarray(v, dtype=np.uint8)
    out = np.empty_like(v)
    out[0] = field.mul_table[a, v[-1]]
    out[1:] = v[:-1]
    return out


@dataclass(frozen=True)
class ConstacyclicCode:
    field: object
    m: int
    a: int
    g: Poly
    h: Poly
    k: int

    def modulus(self):
        return binomial(self.field, self.m, self.a)

    def contains(self, v):
        """Check-polynomial law: v is a codeword iff h*v = 0 mod x^m - a."""
        prod = (self.h * poly_from_vector(self.field, v)) % self.modulus()
        return prod.is_zero

    def generator_matrix(self):
        block = TwistulantBlock(self.field, self.g, self.m, self.a, self.k)
        return twistulant_expand(block)

    def __str__(self):
        return f"CC(q={self.field.q}, m={self.m}, a={self.field.names[self.a]}, g={self.g})"


def cc_make(field, m, a, g):
    """Code generated by a monic divisor g of x^m - a."""
    if a == 0:
        raise InvalidShiftConstant("shift constant must be nonzero")
    if g.is_zero or not g.is_monic:
        raise NotMonic(f"generator must be monic, got {g!r}")
    mod = binomial(field, m, a)
    h, rem = divmod(mod, g)
    if not rem.is_zero:
        raise NotADivisor(f"{g!r} does not divide x^{m} - {field.names[a]}")
    return ConstacyclicCode(field, m, a, g, h, m - int(g.degree))


def cc_enumerate(field, m, a, k_filter=None, include_zero=False):
    """One code per monic divisor of x^m - a, in canonical generator order.

    The zero code (g = x^m - a) is excluded unless include_zero is set.
    """
    fact = binomial_factor(field, m, a)
    irreducibles = [(f, e) for f, e in fact]
    out = []
    for exps in itertools.product(*[range(e + 1) for _, e in irreducibles]):
        g = Poly.one(field)
        for (f, _), e in zip(irreducibles, exps):
            if e:
                g = g * pow_plain(f, e)
        k = m - int(g.degree)
        if k == 0 and not include_zero:
            continue
        if k_filter is not None and k != k_filter:
            continue
        out.append(cc_make(field, m, a, g))
    out.sort(key=lambda c: c.g.sort_key())
    return out


@dataclass(frozen=True)
class TwistulantBlock:
    field: object
    source: Poly
    m: int
    a: int
    rows: int


def twistulant_expand(block):
    """rows x m matrix: row 0 is the source vector, then repeated cc_shift."""
    if block.rows < 1:
        raise EmptyBlock("twistulant block needs at least one row")
    if block.a == 0:
        raise InvalidShiftConstant("shift constant must be nonzero")
    src = block.source % binomial(block.field, block.m, block.a)
    out = np.zeros((block.rows, block.m), dtype=np.uint8)
    out[0] = vector_from_poly(src, block.m)
    for i in range(1, block.rows):
        out[i] = cc_shift(block.field, out[i - 1], block.a)
    return GeneratorMatrix(block.field, out)


_d_cache = {}


def cc_min_distance(C, budget=None, threads=1, use_cache=True):
    """Exact distance of the constacyclic code, as a CodeSummary."""
    key = (C.field.q, C.m, C.a, C.g.coeffs)
    if use_cache and key in _d_cache:
        d = _d_cache[key]
        return CodeSummary(C.m, C.k, C.field.q, d_lower=d, d_upper=d)
    kwargs = {} if budget is None else {"budget": budget}
    res = min_distance(C.generator_matrix(), threads=threads, **kwargs)
    summary = CodeSummary(
        C.m,
        C.k,
        C.field.q,
        d_lower=res.lower,
        d_upper=res.upper if res.witness is not None or res.is_exact else None,
    )
    if res.is_exact and use_cache:
        _d_cache[key] = res.upper
    return summary
