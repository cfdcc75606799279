"""Exact integer/rational matrix routines.

Matrices are lists of rows.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .integers import xgcd
from .polys import IntPoly


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_pow(M, k: int):
    out, base = identity(len(M)), M
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def bareiss_det(M) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rational_det(M) -> Fraction:
    den = 1
    for row in M:
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    n = len(M)
    scaled = [[int(Fraction(x) * den) for x in row] for row in M]
    return Fraction(bareiss_det(scaled), den**n)


def charpoly(M) -> IntPoly:
    """det(X*I - M) for an integer matrix, by Bareiss elimination over Z[X].

    Leading principal minors of X*I - M are monic, so no pivoting is needed
    and every Bareiss division is exact in Z[X].
    """
    n = len(M)
    A = [[IntPoly([-M[i][j]] + ([1] if i == j else [])) for j in range(n)] for i in range(n)]
    prev = IntPoly([1])
    for k in range(n - 1):
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * akk - aik * A[k][j]).exact_div_poly(prev)
        prev = akk
    return A[n - 1][n - 1] if n else IntPoly([1])


def rational_charpoly(M) -> tuple[IntPoly, int]:
    """Characteristic polynomial of a rational matrix.

    Returns (numerator polynomial, denominator): det(X*I - M) = num(X) / den
    with den = D^n where D clears all entry denominators.  Callers check
    integrality themselves.
    """
    n = len(M)
    D = 1
    for row in M:
        for x in row:
            d = Fraction(x).denominator
            D = D * d // gcd(D, d)
    N = [[int(Fraction(x) * D) for x in row] for row in M]
    # det(X - N/D) = D^-n * det(D*X - N) = D^-n * chi_N(D*X)
    return charpoly(N).compose_scale(D), D**n


def hnf_lower(rows, ncols: int):
    """Lower-triangular row Hermite normal form of an integer row set.

    Returns a dict ``pivot column -> row``; row k has its last nonzero entry
    in column k, the pivot is positive and every entry of column k in a
    later row lies in [0, pivot).  Missing keys mean rank deficiency.
    """
    basis: dict[int, list[int]] = {}
    for vec in rows:
        v = list(vec)
        for j in range(ncols - 1, -1, -1):
            if v[j] == 0:
                continue
            if j not in basis:
                if v[j] < 0:
                    v = [-x for x in v]
                basis[j] = v
                break
            b = basis[j]
            g, x, y = xgcd(b[j], v[j])
            bj, vj = b[j] // g, v[j] // g
            basis[j] = [x * s + y * t for s, t in zip(b, v)]
            v = [bj * t - vj * s for s, t in zip(b, v)]
        if len(basis) == ncols:
            _reduce_lower(basis, ncols)
    _reduce_lower(basis, ncols)
    return basis


def _reduce_lower(basis, ncols):
    for r in range(ncols):
        row = basis.get(r)
        if row is None:
            continue
        if row[r] < 0:
            row[:] = [-x for x in row]
        for k in range(r - 1, -1, -1):
            piv = basis.get(k)
            if piv is None or row[k] == 0:
                continue
            t = row[k] // piv[k]
            if t:
                for i in range(k + 1):
                    row[i] -= t * piv[i]


def left_kernel_mod(rows, q: int):
    """Basis of {x : x * A = 0 (mod q)} for a matrix A given by rows."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    # Row-reduce [A | I]; rows whose A-part vanishes carry kernel vectors.
    aug = [[x % q for x in rows[i]] + [int(i == k) for k in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, q)
        aug[r] = [x * inv % q for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % q for x, y in zip(aug[i], aug[r])]
        r += 1
        if r == m:
            break
    return [row[ncols:] for row in aug[r:]]


def rational_nullspace(rows):
    """Basis of {x : x * A = 0} over Q, as lists of Fractions."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        r += 1
    return [row[ncols:] for row in aug[r:]]
