"""Linear-code linear algebra over GF(q).

Matrices are dense numpy uint8 arrays of field-element indices.  All row
reduction goes through the field's lookup tables with fancy indexing, so the
same code path serves prime and extension fields.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch


def field_sum(field, arr, axis):
    """Sum of field elements along an axis of an index array."""
    a = np.asarray(arr, dtype=np.uint8)
    if field.e == 1:
        return (a.astype(np.int64).sum(axis=axis) % field.p).astype(np.uint8)
    if field.p == 2:
        # index bits are the coefficient vector, so addition is XOR
        return np.bitwise_xor.reduce(a, axis=axis)
    d0 = (a % 3).astype(np.int64).sum(axis=axis) % 3
    d1 = (a // 3).astype(np.int64).sum(axis=axis) % 3
    return (d0 + 3 * d1).astype(np.uint8)


def mat_mul(field, A, B):
    """Matrix product over the field; A is (r, s), B is (s, c)."""
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    prod = field.mul_table[A[:, :, None], B[None, :, :]]
    return field_sum(field, prod, axis=1)


class GeneratorMatrix:
    """A spanning set of rows; not required to be independent."""

    __slots__ = ("field", "array")

    def __init__(self, field, rows):
        arr = np.asarray(rows, dtype=np.uint8)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError("rows must form a 2-d array")
        if arr.size and int(arr.max()) >= field.q:
            raise FieldMismatch("entry out of range for the field")
        self.field = field
        self.array = arr
        self.array.setflags(write=False)

    @property
    def n(self):
        return self.array.shape[1]

    @property
    def row_count(self):
        return self.array.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorMatrix)
            and other.field is self.field
            and other.array.shape == self.array.shape
            and bool(np.array_equal(other.array, self.array))
        )

    def __repr__(self):
        return f"GeneratorMatrix(q={self.field.q}, rows={self.row_count}, n={self.n})"


@dataclass(frozen=True)
class CodeSummary:
    """[n, k]_q with whatever is known about d."""

    n: int
    k: int
    q: int
    d_lower: int | None = None
    d_upper: int | None = None

    def __post_init__(self):
        if self.d_lower is not None and self.d_upper is not None and self.d_lower > self.d_upper:
            raise ValueError("distance lower bound exceeds upper bound")

    @property
    def d_exact(self):
        if self.d_lower is not None and self.d_lower == self.d_upper:
            return self.d_lower
        return None

    def __str__(self):
        if self.d_exact is not None:
            return f"[{self.n},{self.k},{self.d_exact}]_{self.q}"
        if self.d_lower is not None or self.d_upper is not None:
            return f"[{self.n},{self.k},{self.d_lower}..{self.d_upper}]_{self.q}"
        return f"[{self.n},{self.k}]_{self.q}"


def _rref_array(field, A):
    """In-place-style reduced row echelon form; returns (R, rank, pivot_cols)."""
    R = np.array(A, dtype=np.uint8, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        lead = R[r, c]
        if lead != 1:
            R[r] = field.mul_table[field.inv_table[lead], R[r]]
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            prod = field.mul_table[col[hit][:, None], R[r][None, :]]
            R[hit] = field.sub_table[R[hit], prod]
        pivots.append(c)
        r += 1
    return R, r, pivots


def rref(G):
    """Reduced row echelon form; returns (GeneratorMatrix, rank, pivot_columns)."""
    R, rank, pivots = _rref_array(G.field, G.array)
    return GeneratorMatrix(G.field, R), rank, pivots


def rank(G):
    return _rref_array(G.field, G.array)[1]


def basis(G):
    """Row-reduced basis with zero rows stripped; the canonical form of the code."""
    R, rk, _ = _rref_array(G.field, G.array)
    return GeneratorMatrix(G.field, R[:rk])


def _reduce_against(field, R, pivots, V):
    """Reduce rows V modulo the rref rows R; zero result means membership."""
    V = np.array(V, dtype=np.uint8, copy=True)
    for i, c in enumerate(pivots):
        coef = V[:, c].copy()
        hit = np.nonzero(coef)[0]
        if hit.size:
            prod = field.mul_table[coef[hit][:, None], R[i][None, :]]
            V[hit] = field.sub_table[V[hit], prod]
    return V


def contains(G, vectors):
    """True when every given row lies in the row space of G."""
    V = np.asarray(vectors, dtype=np.uint8)
    if V.ndim == 1:
        V = V.reshape(1, -1)
    R, _, pivots = _rref_array(G.field, G.array)
    return not _reduce_against(G.field, R, pivots, V).any()


def dual(G):
    """Generator of the Euclidean dual; rank is n - rank(G)."""
    F = G.field
    R, rk, pivots = _rref_array(F, G.array)
    n = G.n
    free = [c for c in range(n) if c not in set(pivots)]
    D = np.zeros((len(free), n), dtype=np.uint8)
    for i, fc in enumerate(free):
        D[i, fc] = 1
        for j, pc in enumerate(pivots):
            D[i, pc] = F.neg_table[R[j, fc]]
    return GeneratorMatrix(F, D)


def gram(G):
    """B·Bᵀ for a row basis B of G."""
    B = basis(G).array
    return mat_mul(G.field, B, B.T)


def is_lcd(G):
    """C ∩ C⊥ = {0}, i.e. the Gram matrix of a basis is nonsingular."""
    B = basis(G)
    if B.row_count == 0:
        return True
    M = gram(G)
    return _rref_array(G.field, M)[1] == B.row_count


def is_dual_containing(G):
    """Every dual basis row lies in the row space of G."""
    D = dual(G)
    if D.row_count == 0:
        return True
    return contains(G, D.array)


def is_self_orthogonal(G):
    B = basis(G)
    if B.row_count == 0:
        return True
    return not gram(G).any()


def is_reversible(G):
    """Coordinate reversal maps the code onto itself."""
    rev = GeneratorMatrix(G.field, G.array[:, ::-1])
    return basis(G) == basis(rev)


def extend(G):
    """Append a coordinate making every codeword sum to zero; n+1, same k."""
    F = G.field
    B = basis(G).array
    sums = field_sum(F, B, axis=1)
    col = F.neg_table[sums].reshape(-1, 1)
    return GeneratorMatrix(F, np.hstack([B, col]))
