"""Dense univariate polynomials over GF(q), plus factorization.

Coefficients are stored ascending (coeffs[i] multiplies x^i) as field-element
indices, with no trailing zeros; the zero polynomial has an empty coefficient
tuple and degree NEG_DEGREE, a sentinel that compares less than every integer.

Factorization is square-free decomposition, then distinct-degree splitting,
then equal-degree splitting (Cantor-Zassenhaus) driven by a fixed-seed RNG, so
output is deterministic.  Factors are reported monic and sorted canonically
(degree, then coefficient indices ascending).
"""

import random

import numpy as np

from .errors import DivisionByZero, FieldMismatch, InvalidShiftConstant

NEG_DEGREE = float("-inf")

_EDF_SEED = 0x51F7


class Poly:
    """Immutable polynomial over a Field, coefficient indices ascending."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, degree, coeff=1):
        return cls(field, (0,) * degree + (coeff,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_DEGREE

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def sort_key(self):
        """Canonical order: degree, then coefficient indices ascending."""
        return (len(self.coeffs), self.coeffs)

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __sub__(self, other):
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        F = self.field
        if self.is_zero or other.is_zero:
            return Poly.zero(F)
        if F.e == 1:
            prod = np.convolve(
                np.asarray(self.coeffs, dtype=np.int64), np.asarray(other.coeffs, dtype=np.int64)
            )
            return Poly(F, (prod % F.p).tolist())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift_up(self, k):
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dd = len(other.coeffs) - 1
        if len(rem) - 1 < dd:
            return Poly.zero(F), self
        inv_lead = F.inv(other.leading)
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                qc = F.mul(c, inv_lead)
                quot[i - dd] = qc
                for j, b in enumerate(other.coeffs):
                    rem[i - dd + j] = F.sub(rem[i - dd + j], F.mul(qc, b))
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.leading))

    def evaluate(self, x):
        """Evaluate at the field element index x (Horner)."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            s = 0
            for _ in range(i % F.p):
                s = F.add(s, self.coeffs[i])
            out.append(s)
        return Poly(F, out)

    def __eq__(self, other):
        return (
            isinstance(other, Poly) and other.field is self.field and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "0"
        names = self.field.names
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(names[c])
            else:
                xi = "x" if i == 1 else f"x^{i}"
                terms.append(xi if c == 1 else f"{names[c]}*{xi}")
        return " + ".join(terms)


def gcd(f, g):
    """Monic greatest common divisor."""
    f._check(g)
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def extended_gcd(f, g):
    """Return (d, u, v) with d = gcd monic and u*f + v*g = d."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    c = F.inv(r0.leading)
    return r0.monic(), s0.scale(c), t0.scale(c)


def pow_mod(f, n, mod):
    """f^n mod `mod` by square-and-multiply."""
    result = Poly.one(f.field)
    base = f % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


class Factorization:
    """unit * prod(factor^multiplicity); factors monic irreducible, canonical order."""

    __slots__ = ("field", "unit", "factors")

    def __init__(self, field, unit, factors):
        self.field = field
        self.unit = unit
        self.factors = tuple(sorted(factors, key=lambda fm: fm[0].sort_key()))

    def product(self):
        out = Poly(self.field, (self.unit,))
        for f, m in self.factors:
            out = out * pow_plain(f, m)
        return out

    def divisor_count(self):
        n = 1
        for _, m in self.factors:
            n *= m + 1
        return n

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        parts = [f"({f!r})^{m}" if m > 1 else f"({f!r})" for f, m in self.factors]
        u = "" if self.unit == 1 else f"{self.field.names[self.unit]} * "
        return u + " * ".join(parts)


def pow_plain(f, n):
    result = Poly.one(f.field)
    base = f
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def _pth_root(f):
    # f is a polynomial in x^p; over GF(p^e) the p-th root of a coefficient c
    # is c^(p^(e-1)).
    F = f.field
    root_exp = F.p ** (F.e - 1)
    out = []
    for i in range(0, len(f.coeffs), F.p):
        out.append(F.pow(f.coeffs[i], root_exp))
    return Poly(F, out)


def _squarefree_decomposition(f):
    """Monic f -> list of (monic squarefree part, multiplicity)."""
    F = f.field
    p = F.p
    parts = []
    fp = f.derivative()
    if fp.is_zero:
        for g, m in _squarefree_decomposition(_pth_root(f)):
            parts.append((g, p * m))
        return parts
    c = gcd(f, fp)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            parts.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        for g, m in _squarefree_decomposition(_pth_root(c)):
            parts.append((g, p * m))
    return parts


def _distinct_degree(f):
    """Squarefree monic f -> list of (product of irreducibles of degree d, d)."""
    F = f.field
    x = Poly.x(F)
    out = []
    h = x
    fstar = f
    d = 1
    while fstar.degree >= 2 * d:
        h = pow_mod(h, F.q, fstar)
        g = gcd(fstar, h - x)
        if g.degree > 0:
            out.append((g, d))
            fstar = fstar // g
            h = h % fstar
        d += 1
    if fstar.degree > 0:
        out.append((fstar, int(fstar.degree)))
    return out


def _random_poly(field, max_degree, rng):
    return Poly(field, [rng.randrange(field.q) for _ in range(max_degree + 1)])


def _equal_degree(f, d, rng):
    """Split monic squarefree f = product of irreducibles all of degree d."""
    if f.degree == d:
        return [f]
    F = f.field
    while True:
        u = _random_poly(F, int(f.degree) - 1, rng)
        if u.degree < 1:
            continue
        g = gcd(f, u)
        if 0 < g.degree < f.degree:
            break
        if F.p == 2:
            # additive trace map of u over GF(2)
            t = u % f
            acc = t
            for _ in range(F.e * d - 1):
                t = (t * t) % f
                acc = (acc + t) % f
            g = gcd(f, acc)
        else:
            w = pow_mod(u, (F.q**d - 1) // 2, f)
            g = gcd(f, w - Poly.one(F))
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f):
    """Full factorization of a nonzero polynomial into monic irreducibles."""
    if f.is_zero:
        raise DivisionByZero("cannot factor the zero polynomial")
    F = f.field
    unit = f.leading
    f = f.monic()
    rng = random.Random(_EDF_SEED)
    factors = []
    if f.degree == 0:
        return Factorization(F, unit, [])
    for sf, mult in _squarefree_decomposition(f):
        for prod, d in _distinct_degree(sf):
            for irr in _equal_degree(prod, d, rng):
                factors.append((irr, mult))
    return Factorization(F, unit, factors)


def is_irreducible(f):
    """Rabin test: deterministic given the field tables."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    n = int(f.degree)
    x = Poly.x(F)
    # x^(q^n) == x mod f
    h = x
    for _ in range(n):
        h = pow_mod(h, F.q, f)
    if (h - x) % f != Poly.zero(F):
        return False
    for r in sorted({p for p in _prime_factors(n)}):
        h = x
        for _ in range(n // r):
            h = pow_mod(h, F.q, f)
        if gcd(f, h - x).degree > 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def binomial(field, m, a):
    """The polynomial x^m - a."""
    if a == 0:
        raise InvalidShiftConstant("shift constant must be nonzero")
    coeffs = [field.neg(a)] + [0] * (m - 1) + [1]
    return Poly(field, coeffs)


def binomial_factor(field, m, a):
    """Factorization of x^m - a; handles repeated roots when p divides m."""
    return factor(binomial(field, m, a))
