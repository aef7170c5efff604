"""Equivalence classes of constacyclic codes under multiplier maps.

The search only needs one generator per class: monomially equivalent codes
have identical parameters, so trying both wastes budget.  Codes of length m
with shift constant a correspond to divisors of x^m - a, and the roots of
x^m - a are N-th roots of unity for N = m'*t, where m' is the p-free part
of m and t is the multiplicative order of the shift constant.  A unit s
with s = 1 (mod t) permutes those roots by e -> s*e while fixing the root
set, and the induced map on divisors preserves monomial equivalence; the
Frobenius map e -> q*e is the s = q case.  Codes whose factor multisets lie
in one orbit under these maps are grouped together.

The orbit action is computed without leaving F_q: the image of an
irreducible factor under s is the minimal polynomial of y^s in F_q[y]/(phi),
which has the s-th powers of phi's roots as its roots.

The grouping is deliberately conservative.  Whether it matches the true
monomial-equivalence partition is checked two ways: the refined mode splits
any group whose members disagree on (k, d, weight distribution prefix), and
are_equivalent_exhaustive decides genuine equivalence outright for n <= 12.
Search correctness never depends on the partition; every emitted code is
re-verified from its own generator.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .constacyclic import cc_enumerate, cc_min_distance
from .distance import weight_distribution_bruteforce
from .errors import FieldMismatch, MixedInput, OracleScaleExceeded
from .linear import GeneratorMatrix, _rref_array, basis, dual, mat_mul
from .polys import Poly, binomial, factor, pow_mod

_ENUM_CAP = 1 << 20
_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class EquivClass:
    members: tuple
    representative: Poly
    invariant_key: object = None

    def __len__(self):
        return len(self.members)


def _separable_core(field, m, a):
    """Split x^m - a as (x^m' - b)^(p^v) with gcd(m', p) = 1."""
    p, e = field.p, field.e
    mprime, v = m, 0
    while mprime % p == 0:
        mprime //= p
        v += 1
    # b = frob^(-v)(a); Frobenius has order e, so -v is (e-1)*v mod e steps
    b = a
    for _ in range((e - 1) * v % e):
        b = field.frobenius(b)
    assert field.pow(b, p**v) == a
    return mprime, v, b


def _minpoly_power(field, phi, s):
    """Minimal polynomial of y^s in F_q[y]/(phi) for irreducible phi."""
    D = int(phi.degree)
    beta = pow_mod(Poly.x(field), s, phi)
    powers = [Poly.one(field)]
    for _ in range(D):
        powers.append((powers[-1] * beta) % phi)
    V = np.zeros((D + 1, D), dtype=np.uint8)
    for i, pw in enumerate(powers):
        for j, c in enumerate(pw.coeffs):
            V[i, j] = c
    for r in range(1, D + 1):
        # beta^r = sum c_j beta^j solvable iff the augmented column is pivot-free
        aug = np.ascontiguousarray(np.hstack([V[:r].T, V[r][:, None]]))
        R, rk, pivots = _rref_array(field, aug)
        if r in pivots:
            continue
        coeffs = [0] * (r + 1)
        for row, col in enumerate(pivots):
            coeffs[col] = field.neg(int(R[row, r]))
        coeffs[r] = 1
        return Poly(field, coeffs)
    raise AssertionError("element of a field has a minimal polynomial")


def _multiplier_units(N, t):
    # s = 1 (mod t) keeps the root set of x^m' - b fixed; t = 1 allows all units
    return [s for s in range(1, N + 1) if math.gcd(s, N) == 1 and s % t == 1 % t]


def _factor_multiplicities(irreducibles, g):
    out = []
    rem = g
    for phi in irreducibles:
        mu = 0
        while True:
            q_, r_ = divmod(rem, phi)
            if not r_.is_zero:
                break
            rem, mu = q_, mu + 1
        if mu:
            out.append((phi, mu))
    assert rem.degree == 0
    return out


class _OrbitTable:
    """Per-(q, m, a) tables: irreducible factors and their multiplier images."""

    def __init__(self, field, m, a):
        self.field = field
        mprime, v, b = _separable_core(field, m, a)
        t = field.multiplicative_order(b) if b != 1 else 1
        self.N = mprime * t
        self.units = _multiplier_units(self.N, t)
        core = binomial(field, mprime, b)
        self.irreducibles = [phi for phi, _ in factor(core).factors]
        modulus = binomial(field, m, a)
        self._images = {}
        for s in self.units:
            for phi in self.irreducibles:
                img = _minpoly_power(field, phi, s)
                assert img.degree == phi.degree
                assert (modulus % img).is_zero
                self._images[(phi.coeffs, s)] = img

    def signature(self, g, s):
        parts = [
            (self._images[(phi.coeffs, s)].coeffs, mu)
            for phi, mu in _factor_multiplicities(self.irreducibles, g)
        ]
        return tuple(sorted(parts))

    def canonical_signature(self, g):
        return min(self.signature(g, s) for s in self.units)


_orbit_cache = {}


def _orbit_table(field, m, a):
    key = (field.q, m, a)
    tab = _orbit_cache.get(key)
    if tab is None:
        tab = _orbit_cache[key] = _OrbitTable(field, m, a)
    return tab


def _invariant_key(code):
    s = cc_min_distance(code)
    d = s.d_exact if s.d_exact is not None else s.d_upper
    try:
        counts = weight_distribution_bruteforce(code.generator_matrix())
        prefix = []
        for w in range(1, len(counts)):
            if counts[w]:
                prefix.append((w, int(counts[w])))
                if len(prefix) == 3:
                    break
        prefix = tuple(prefix)
    except OracleScaleExceeded:
        prefix = None
    return (code.k, d, prefix)


def partition(codes, mode="multiplier"):
    """Group constacyclic codes into multiplier-orbit equivalence classes.

    mode="refined" additionally splits any orbit whose members disagree on
    (dimension, minimum distance, first nonzero weight counts).  Classes
    and members are deterministically ordered; the representative is the
    smallest generator.
    """
    if mode not in ("multiplier", "refined"):
        raise ValueError(f"unknown mode {mode!r}")
    codes = list(codes)
    if not codes:
        return []
    F, m, a = codes[0].field, codes[0].m, codes[0].a
    for c in codes:
        if c.field.q != F.q or c.m != m or c.a != a:
            raise MixedInput(
                f"codes must share (q, m, a); got ({c.field.q}, {c.m}, {c.a}) "
                f"alongside ({F.q}, {m}, {a})"
            )
    tab = _orbit_table(F, m, a)
    groups = {}
    for c in codes:
        groups.setdefault(tab.canonical_signature(c.g), []).append(c)

    classes = []
    for sig in sorted(groups):
        bucket = groups[sig]
        if mode == "refined":
            by_key = {}
            for c in bucket:
                by_key.setdefault(_invariant_key(c), []).append(c)
            for key in sorted(by_key, key=repr):
                classes.append(_make_class(by_key[key], key))
        else:
            classes.append(_make_class(bucket, None))
    classes.sort(key=lambda cl: cl.representative.sort_key())
    return classes


def _make_class(codes, key):
    gs = sorted({c.g for c in codes}, key=lambda g: g.sort_key())
    return EquivClass(members=tuple(gs), representative=gs[0], invariant_key=key)


_partition_cache = {}


def partition_all(field, m, a, mode="multiplier"):
    """Partition of every nonzero constacyclic code for (q, m, a), cached."""
    key = (field.q, m, a, mode)
    got = _partition_cache.get(key)
    if got is None:
        got = _partition_cache[key] = partition(cc_enumerate(field, m, a), mode)
    return got


def _all_codewords(field, B):
    k, n = B.shape
    if k == 0:
        return np.zeros((1, n), dtype=np.uint8)
    total = field.q**k
    if total > _ENUM_CAP:
        raise OracleScaleExceeded(f"{field.q}^{k} codewords exceed the oracle cap")
    digits = np.unravel_index(np.arange(total), (field.q,) * k)
    M = np.stack(digits, axis=1).astype(np.uint8)
    return mat_mul(field, M, B)


def _column_signatures(weights, nonzero, n):
    wmax = int(weights.max(initial=0))
    base = []
    for i in range(n):
        base.append(tuple(np.bincount(weights[nonzero[:, i]], minlength=wmax + 1)))
    pair = {}
    for i in range(n):
        for j in range(i + 1, n):
            key = tuple(np.bincount(weights[nonzero[:, i] & nonzero[:, j]], minlength=wmax + 1))
            pair[(i, j)] = key
            pair[(j, i)] = key
    return base, pair


def _nullspace(field, E):
    n = E.shape[1]
    if E.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    R, rk, pivots = _rref_array(field, E)
    free = [j for j in range(n) if j not in pivots]
    B = np.zeros((len(free), n), dtype=np.uint8)
    for i, fc in enumerate(free):
        B[i, fc] = 1
        for row, pc in enumerate(pivots):
            B[i, pc] = field.neg(int(R[row, fc]))
    return B


def _scaling_exists(field, Gp, H):
    """Is there an everywhere-nonzero mu with rowspace(Gp diag(mu)) orthogonal to H?"""
    k, n = Gp.shape
    if H.shape[0] == 0:
        return True
    E = np.empty((k * H.shape[0], n), dtype=np.uint8)
    idx = 0
    for r in range(k):
        E[idx : idx + H.shape[0]] = field.mul_table[Gp[r][None, :], H]
        idx += H.shape[0]
    B = _nullspace(field, E)
    dim = B.shape[0]
    if dim == 0:
        return False
    if field.q**dim > 1 << 16:
        raise OracleScaleExceeded("scaling solution space too large to enumerate")
    digits = np.unravel_index(np.arange(field.q**dim), (field.q,) * dim)
    combos = np.stack(digits, axis=1).astype(np.uint8)
    mus = mat_mul(field, combos, B)
    return bool(np.any(np.all(mus != 0, axis=1)))


def are_equivalent_exhaustive(C1, C2):
    """Decide monomial + field-automorphism equivalence by pruned search.

    Sound and complete for n <= 12: every coordinate bijection consistent
    with column invariants is tried, and for each the per-coordinate scalars
    are solved exactly as a linear system.  Larger inputs raise
    OracleScaleExceeded rather than guessing.
    """
    if C1.field.q != C2.field.q:
        raise FieldMismatch("codes live over different fields")
    F = C1.field
    if C1.n != C2.n:
        return False
    n = C1.n
    if n > 12:
        raise OracleScaleExceeded(f"exhaustive oracle limited to n <= 12, got {n}")
    B1, B2 = basis(C1).array, basis(C2).array
    if B1.shape[0] != B2.shape[0]:
        return False
    k = B1.shape[0]
    if k == 0 or k == n:
        return True

    cw1 = _all_codewords(F, B1)
    cw2 = _all_codewords(F, B2)
    w1 = (cw1 != 0).sum(axis=1)
    w2 = (cw2 != 0).sum(axis=1)
    if np.bincount(w1, minlength=n + 1).tolist() != np.bincount(w2, minlength=n + 1).tolist():
        return False

    base1, pair1 = _column_signatures(w1, cw1 != 0, n)
    base2, pair2 = _column_signatures(w2, cw2 != 0, n)
    if sorted(base1) != sorted(base2):
        return False

    H2 = dual(C2).array
    budget = [_NODE_BUDGET]

    def backtrack(theta_B1, depth, image, used):
        budget[0] -= 1
        if budget[0] < 0:
            raise OracleScaleExceeded("exhaustive oracle exceeded its node budget")
        if depth == n:
            Gp = np.zeros_like(theta_B1)
            for i, j in enumerate(image):
                Gp[:, j] = theta_B1[:, i]
            return _scaling_exists(F, Gp, H2)
        for j in range(n):
            if used[j] or base2[j] != base1[depth]:
                continue
            ok = True
            for i2, j2 in enumerate(image):
                if pair1[(depth, i2)] != pair2[(j, j2)]:
                    ok = False
                    break
            if not ok:
                continue
            image.append(j)
            used[j] = True
            if backtrack(theta_B1, depth + 1, image, used):
                return True
            used[j] = False
            image.pop()
        return False

    frob = np.array([F.frobenius(x) for x in range(F.q)], dtype=np.uint8)
    themed = B1
    for _ in range(F.e):
        if backtrack(themed, 0, [], [False] * n):
            return True
        themed = frob[themed]
    return False
