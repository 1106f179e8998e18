"""Exact integer linear algebra on small dense matrices.

Everything here works on plain Python ints (arbitrary precision) or
fractions.Fraction; no floats ever enter.  Matrices are lists of lists,
vectors are tuples.  Sizes are tiny (ambient dimension <= 8), so the
implementations favour clarity over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def det(A):
    """Determinant of a square integer matrix (Bareiss, fraction-free)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(rows):
    """Rank of a list of integer vectors (fraction-free elimination)."""
    M = [list(r) for r in rows if any(r)]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    col = 0
    while r < len(M) and col < ncols:
        piv = None
        for i in range(r, len(M)):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][col] != 0:
                a, b = M[r][col], M[i][col]
                M[i] = [a * M[i][j] - b * M[r][j] for j in range(ncols)]
        r += 1
        col += 1
    return r


def smith_normal_form(A):
    """Smith normal form with transforms.

    Returns (U, S, V) with U*A*V = S, U and V unimodular, S diagonal with
    S[i][i] dividing S[i+1][i+1].
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row i += c * row j
        S[i] = [a + c * b for a, b in zip(S[i], S[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col i += c * col j
        for row in S:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, m):
                if S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, -q)
                    if S[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, -q)
                    if S[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # enforce divisibility of later entries
        divisor_fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if S[i][j] % S[t][t] != 0:
                    add_row(t, i, 1)
                    divisor_fixed = False
                    break
            if not divisor_fixed:
                break
        if divisor_fixed:
            if S[t][t] < 0:
                S[t] = [-a for a in S[t]]
                U[t] = [-a for a in U[t]]
            t += 1
    return U, S, V


def elementary_divisors(A):
    _, S, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))
            if S[i][i] != 0]


def integer_kernel(A):
    """Basis (list of tuples) of {x : A x = 0, x integral}; saturated."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [tuple(identity(n)[i]) for i in range(n)]
    _, S, V = smith_normal_form(A)
    r = sum(1 for i in range(min(m, n)) if S[i][i] != 0)
    # kernel basis = columns of V beyond the rank
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


def saturated_row_basis(rows):
    """Basis of the saturation (R-span intersected with Z^n) of the row span.

    Implemented via the kernel of the kernel, which is automatically
    saturated.
    """
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    ker = integer_kernel(rows)
    if not ker:
        n = len(rows[0])
        return [tuple(identity(n)[i]) for i in range(n)]
    return integer_kernel(ker)


def solve_rational(A, b):
    """Solve A x = b exactly over Q; returns tuple of Fractions or None.

    A need not be square; returns one solution of the (consistent) system,
    or None when inconsistent.  Free variables are set to 0.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])]
         for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, m):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        M[r] = [x / M[r][col] for x in M[r]]
        for i in range(m):
            if i != r and M[i][col] != 0:
                c = M[i][col]
                M[i] = [x - c * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = M[i][n]
    return tuple(x)


def solve_integer(A, b):
    """One integral solution x of A x = b, or None (uses SNF)."""
    m = len(A)
    n = len(A[0]) if m else 0
    U, S, V = smith_normal_form(A)
    c = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(min(m, n)):
        if S[i][i] != 0:
            if c[i] % S[i][i] != 0:
                return None
            y[i] = c[i] // S[i][i]
        elif c[i] != 0:
            return None
    for i in range(min(m, n), m):
        if c[i] != 0:
            return None
    return tuple(sum(V[i][j] * y[j] for j in range(n)) for i in range(n))
