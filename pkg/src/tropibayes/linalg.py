"""Exact integer and rational linear algebra helpers.

All routines work on plain Python ints / fractions.Fraction so that every
polyhedral predicate downstream is decided exactly, never by floating point.
Matrices are sequences of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

Vec = tuple
Mat = tuple


def vec_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def primitive_vector(v) -> tuple:
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def scale_to_integer(v) -> tuple:
    """Clear denominators of a rational vector and reduce to primitive form."""
    denom = 1
    for x in v:
        denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    ints = [int(Fraction(x) * denom) for x in v]
    return primitive_vector(ints)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def mat_vec(M, v):
    return tuple(dot(row, v) for row in M)


def mat_mul(A, B):
    cols = list(zip(*B))
    return tuple(tuple(dot(row, c) for c in cols) for row in A)


def transpose(M):
    return tuple(zip(*M))


def det_int(M) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def det_fraction(M) -> Fraction:
    n = len(M)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        result *= pivot
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return sign * result


def rank_fraction(M) -> int:
    if not M:
        return 0
    a = [[Fraction(x) for x in row] for row in M]
    rows, cols = len(a), len(a[0])
    rank = 0
    for col in range(cols):
        pivot_row = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        a[rank] = [x / pivot for x in a[rank]]
        for i in range(rows):
            if i != rank and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def solve_fraction(A, b):
    """Solve A x = b exactly; A square and nonsingular. Returns Fractions."""
    n = len(A)
    a = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise ValueError("singular system")
        a[k], a[pivot_row] = a[pivot_row], a[k]
        pivot = a[k][k]
        a[k] = [x / pivot for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                factor = a[i][k]
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return tuple(a[i][n] for i in range(n))


def solve_rectangular(A, b):
    """Exact solution of A x = b for full-column-rank A, or None if inconsistent."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        a[r] = [x / pivot for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return tuple(x)


def hermite_normal_form(M):
    """Row-style Hermite normal form of an integer matrix.

    Returns the HNF with positive pivots, entries above each pivot reduced to
    [0, pivot), zero rows dropped. Canonical for a fixed row space lattice.
    """
    a = [[int(x) for x in row] for row in M]
    if not a:
        return ()
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        # Euclidean elimination below row r in column c.
        while True:
            nonzero = [i for i in range(r + 1, rows) if a[i][c] != 0]
            if a[r][c] == 0 and nonzero:
                i = min(nonzero, key=lambda i: abs(a[i][c]))
                a[r], a[i] = a[i], a[r]
                continue
            if not nonzero:
                break
            i = min(nonzero, key=lambda i: abs(a[i][c]))
            if abs(a[i][c]) < abs(a[r][c]) or a[r][c] == 0:
                a[r], a[i] = a[i], a[r]
            for i in range(r + 1, rows):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        if a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == rows:
                break
    return tuple(tuple(row) for row in a[:r])


def integer_kernel_basis(M):
    """Basis of the saturated lattice {x in Z^k : M x = 0}, rows in HNF."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    # Column-style elimination on M, tracking operations in U (M @ U invariant
    # column ops). Kernel = columns of U where the reduced M column is zero.
    a = [[int(x) for x in row] for row in M]
    u = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def col_swap(c1, c2):
        for row in a:
            row[c1], row[c2] = row[c2], row[c1]
        for row in u:
            row[c1], row[c2] = row[c2], row[c1]

    def col_addmul(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    r = 0
    for i in range(rows):
        while True:
            nonzero = [c for c in range(r, cols) if a[i][c] != 0]
            if not nonzero:
                break
            c = min(nonzero, key=lambda c: abs(a[i][c]))
            if c != r:
                col_swap(r, c)
            if all(a[i][c] % a[i][r] == 0 for c in range(r + 1, cols) if a[i][c] != 0):
                for c in range(r + 1, cols):
                    if a[i][c] != 0:
                        col_addmul(c, r, a[i][c] // a[i][r])
                break
            for c in range(r + 1, cols):
                if a[i][c] != 0:
                    col_addmul(c, r, a[i][c] // a[i][r])
        if a[i][r] if r < cols else 0:
            r += 1
            if r == cols:
                break
    kernel_cols = [c for c in range(cols) if all(a[i][c] == 0 for i in range(rows))]
    basis = tuple(tuple(u[i][c] for i in range(cols)) for c in kernel_cols)
    return hermite_normal_form(basis)


def minor_expansion_det(V, W):
    """Sum over n-subsets I of det(V_I) * det(W_I); V is n x k, W is k x n."""
    n = len(V)
    k = len(V[0])
    Wt = transpose(W)
    total = 0
    for subset in combinations(range(k), n):
        vi = tuple(tuple(row[j] for j in subset) for row in V)
        wi = tuple(tuple(Wt[row][j] for row in range(n)) for j in subset)
        total += det_int(vi) * det_int(wi)
    return total
