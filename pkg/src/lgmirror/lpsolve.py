"""A small exact simplex solver over the rationals.

Only what the regularity-certificate search and a couple of membership
oracles need: maximize c.x subject to A x <= b, x free, all data in
Fraction.  Free variables are split into positive parts internally.
Bland's rule keeps the pivoting finite.
"""

from __future__ import annotations

from fractions import Fraction


class LPResult:
    def __init__(self, status, objective=None, x=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.objective = objective
        self.x = x


def _simplex(T, basis, nrows, ncols):
    """Run simplex on tableau T (last row = objective, last col = rhs)."""
    while True:
        # Bland: entering variable = smallest index with positive reduced cost
        enter = None
        for j in range(ncols):
            if T[nrows][j] > 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i in range(nrows):
            if T[i][enter] > 0:
                ratio = T[i][ncols] / T[i][enter]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return "unbounded"
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(nrows + 1):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        basis[leave] = enter


def maximize(c, A, b):
    """Maximize c.x subject to A x <= b with x unrestricted in sign.

    Returns an LPResult; on "optimal" carries the objective value and one
    optimizer.  All arithmetic is exact.
    """
    n = len(c)
    m = len(A)
    c = [Fraction(x) for x in c]
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    # split x = u - v, u,v >= 0
    nv = 2 * n
    rows = []
    rhs = []
    for i in range(m):
        row = []
        for j in range(n):
            row.append(A[i][j])
        for j in range(n):
            row.append(-A[i][j])
        if b[i] < 0:
            row = [-x for x in row]
            rows.append(row)
            rhs.append(-b[i])
        else:
            rows.append(row)
            rhs.append(b[i])
    # phase 1: add slack (for rows that came from b>=0) or surplus+artificial
    ncols = nv + m  # slack/surplus block
    art = []
    for i in range(m):
        if b[i] < 0:
            art.append(i)
    ncols_total = ncols + len(art)
    T = []
    basis = []
    art_col = {}
    for k, i in enumerate(art):
        art_col[i] = ncols + k
    for i in range(m):
        row = [Fraction(0)] * (ncols_total + 1)
        for j in range(nv):
            row[j] = rows[i][j]
        row[nv + i] = Fraction(-1) if b[i] < 0 else Fraction(1)
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(nv + i)
        row[ncols_total] = rhs[i]
        T.append(row)
    if art:
        # phase-1: maximize -(sum of artificials).  With the artificials
        # basic, the objective row in nonbasic terms is the sum of their
        # constraint rows (the -1 cost cancels the +1 basis column).
        obj = [Fraction(0)] * (ncols_total + 1)
        for i in art:
            obj = [o + x for o, x in zip(obj, T[i])]
        for k in art_col.values():
            obj[k] = Fraction(0)
        T.append(obj)
        status = _simplex(T, basis, m, ncols_total)
        if status != "optimal" or T[m][ncols_total] != 0:
            return LPResult("infeasible")
        T.pop()
        # pivot remaining artificials out of the basis if possible
        for i in range(m):
            if basis[i] >= ncols:
                for j in range(ncols):
                    if T[i][j] != 0:
                        piv = T[i][j]
                        T[i] = [x / piv for x in T[i]]
                        for ii in range(m):
                            if ii != i and T[ii][j] != 0:
                                f = T[ii][j]
                                T[ii] = [a - f * bb for a, bb in zip(T[ii], T[i])]
                        basis[i] = j
                        break
        # drop artificial columns
        keep = list(range(ncols)) + [ncols_total]
        T = [[row[j] for j in keep] for row in T]
        ncols_total = ncols
    # phase 2
    obj = [Fraction(0)] * (ncols_total + 1)
    for j in range(n):
        obj[j] = c[j]
        obj[n + j] = -c[j]
    # express objective in terms of nonbasic variables
    for i in range(m):
        if obj[basis[i]] != 0:
            f = obj[basis[i]]
            obj = [a - f * bb for a, bb in zip(obj, T[i])]
    T.append(obj)
    status = _simplex(T, basis, m, ncols_total)
    if status == "unbounded":
        return LPResult("unbounded")
    val = -T[m][ncols_total]
    xs = [Fraction(0)] * ncols_total
    for i in range(m):
        xs[basis[i]] = T[i][ncols_total]
    x = tuple(xs[j] - xs[n + j] for j in range(n))
    return LPResult("optimal", objective=val, x=x)


def feasible_strict(A_eq, b_eq, A_lt, b_lt):
    """Decide feasibility of {A_eq x = b_eq, A_lt x < b_lt} over Q.

    Strictness is handled by maximizing a slack eps with
    A_lt x + eps <= b_lt, eps <= 1; the system is strictly feasible iff
    the optimum is positive.  Returns (bool, x or None).
    """
    n = len(A_lt[0]) if A_lt else (len(A_eq[0]) if A_eq else 0)
    rows = []
    rhs = []
    for row, b in zip(A_eq, b_eq):
        rows.append(list(row) + [0])
        rhs.append(b)
        rows.append([-x for x in row] + [0])
        rhs.append(-b)
    for row, b in zip(A_lt, b_lt):
        rows.append(list(row) + [1])
        rhs.append(b)
    rows.append([0] * n + [1])
    rhs.append(1)
    c = [0] * n + [1]
    res = maximize(c, rows, rhs)
    if res.status != "optimal" or res.objective <= 0:
        return False, None
    return True, res.x[:n]
