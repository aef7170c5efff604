"""Finite fields GF(q) for q in {2,3,4,5,7,8,9}.

Elements are identified by an integer index in [0, q).  For prime fields the
index is the residue itself.  For extension fields GF(p^e) the index encodes
the coefficient vector over GF(p) in base p, little-endian: the element
c0 + c1*t + ... corresponds to index c0 + c1*p + ... where t is a root of the
defining modulus.  The moduli are fixed so that printed coefficient strings
are unambiguous:

    GF(4):  t^2 + t + 1   (display alphabet 0,1,a,b with a = t, b = a^2)
    GF(8):  t^3 + t + 1   (display alphabet 0..7, index = digit)
    GF(9):  t^2 + 1       (display alphabet 0..8, index = digit)

All arithmetic goes through small lookup tables built once per field; Field
instances are cached and immutable, so they are safe to share across threads.
"""

import functools

import numpy as np

from .errors import DivisionByZero, FieldMismatch, UnsupportedField

_MODULI = {
    4: (2, 2, (1, 1, 1)),    # t^2 + t + 1 over GF(2)
    8: (2, 3, (1, 1, 0, 1)),  # t^3 + t + 1 over GF(2)
    9: (3, 2, (1, 0, 1)),    # t^2 + 1 over GF(3)
}

_PRIMES = {2, 3, 5, 7}

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)


def _vec_of_index(i, p, e):
    return tuple((i // p**j) % p for j in range(e))


def _index_of_vec(v, p):
    return sum(c * p**j for j, c in enumerate(v))


def _vec_mul(u, v, p, modulus):
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] = (prod[i + j] + a * b) % p
    # reduce mod the monic modulus
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(e):
                prod[d - e + j] = (prod[d - e + j] - c * modulus[j]) % p
    return tuple(prod[:e])


class Field:
    """Arithmetic over GF(q) via precomputed index tables."""

    def __init__(self, q):
        if q not in SUPPORTED_Q:
            raise UnsupportedField(f"q={q} is not a supported prime power (need one of {SUPPORTED_Q})")
        self.q = q
        if q in _PRIMES:
            self.p, self.e, self.modulus = q, 1, None
        else:
            self.p, self.e, self.modulus = _MODULI[q]

        p, e = self.p, self.e
        if e == 1:
            add = [[(i + j) % p for j in range(q)] for i in range(q)]
            mul = [[(i * j) % p for j in range(q)] for i in range(q)]
        else:
            vecs = [_vec_of_index(i, p, e) for i in range(q)]
            add = [
                [_index_of_vec(tuple((a + b) % p for a, b in zip(vecs[i], vecs[j])), p) for j in range(q)]
                for i in range(q)
            ]
            mul = [
                [_index_of_vec(_vec_mul(vecs[i], vecs[j], p, self.modulus), p) for j in range(q)]
                for i in range(q)
            ]
        neg = [add[i].index(0) for i in range(q)]
        sub = [[add[i][neg[j]] for j in range(q)] for i in range(q)]
        inv = [0] * q
        for i in range(1, q):
            inv[i] = mul[i].index(1)

        self.add_table = np.array(add, dtype=np.uint8)
        self.sub_table = np.array(sub, dtype=np.uint8)
        self.mul_table = np.array(mul, dtype=np.uint8)
        self.neg_table = np.array(neg, dtype=np.uint8)
        self.inv_table = np.array(inv, dtype=np.uint8)

        if q == 4:
            self.names = ("0", "1", "a", "b")
        else:
            self.names = tuple(str(i) for i in range(q))
        self._name_to_index = {c: i for i, c in enumerate(self.names)}

    # -- scalar arithmetic on indices ------------------------------------

    def add(self, x, y):
        return int(self.add_table[x, y])

    def sub(self, x, y):
        return int(self.sub_table[x, y])

    def mul(self, x, y):
        return int(self.mul_table[x, y])

    def neg(self, x):
        return int(self.neg_table[x])

    def inv(self, x):
        if x == 0:
            raise DivisionByZero(f"cannot invert 0 in GF({self.q})")
        return int(self.inv_table[x])

    def div(self, x, y):
        if y == 0:
            raise DivisionByZero(f"division by 0 in GF({self.q})")
        return int(self.mul_table[x, self.inv_table[y]])

    def pow(self, x, n):
        if n < 0:
            x, n = self.inv(x), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            n >>= 1
        return r

    def frobenius(self, x):
        """x -> x^p, the generating field automorphism."""
        return self.pow(x, self.p)

    def automorphism_powers(self):
        """Exponents j such that x -> x^(p^j) enumerate Aut(GF(q))."""
        return tuple(range(self.e))

    # -- element plumbing -------------------------------------------------

    def element(self, i):
        if not 0 <= i < self.q:
            raise ValueError(f"index {i} out of range for GF({self.q})")
        return FieldElement(self, i)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return (FieldElement(self, i) for i in range(self.q))

    def name(self, i):
        return self.names[i]

    def index_of_name(self, ch):
        try:
            return self._name_to_index[ch]
        except KeyError:
            raise ValueError(f"{ch!r} is not an element name of GF({self.q})") from None

    def multiplicative_order(self, x):
        if x == 0:
            raise DivisionByZero("0 has no multiplicative order")
        r, y = 1, x
        while y != 1:
            y = self.mul(y, x)
            r += 1
        return r

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_make, (self.q,))


@functools.lru_cache(maxsize=None)
def field_make(q):
    """Return the (cached, shared) Field instance for GF(q)."""
    return Field(q)


class FieldElement:
    """A field element: a Field plus an index.  Immutable, hashable."""

    __slots__ = ("field", "index")

    def __init__(self, field, index):
        self.field = field
        self.index = index

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch(f"mixing {self.field} and {other.field} elements")
            return other.index
        if isinstance(other, int):
            return other % self.field.q if self.field.e == 1 else other
        return NotImplemented

    def __add__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.index, j))

    __radd__ = __add__

    def __sub__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.index, j))

    def __rsub__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(j, self.index))

    def __mul__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.index, j))

    __rmul__ = __mul__

    def __truediv__(self, other):
        j = self._coerce(other)
        if j is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.index, j))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.index, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.index))

    def __bool__(self):
        return self.index != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == (other % self.field.q if self.field.e == 1 else other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.index))

    def __repr__(self):
        return f"{self.field.names[self.index]}"
