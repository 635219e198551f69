"""Exact phase-1 simplex for convex-combination feasibility.

Solves min sum(artificials) subject to A w + artificials = b, w >= 0 over
exact rationals, with Bland's smallest-index rule so the pivot sequence
is deterministic and cannot cycle.  The optimum z* is the L1 infeasibility
of {A w = b, w >= 0}: z* == 0 means exactly feasible, and a small z*
bounds every per-row residual of the returned w by z*.

Float right-hand sides are converted with Fraction(float), which is exact,
so feasibility decisions degrade nowhere; callers choose the tolerance
they accept on z*.
"""
from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def phase1(rows: list[list], rhs: list) -> tuple[Fraction, list[Fraction]]:
    """Minimize total artificial infeasibility of {A w = b, w >= 0}.

    Parameters
    ----------
    rows : m lists of N exact values (A by rows)
    rhs : m exact values (b)

    Returns
    -------
    (z_star, w) : exact optimum and an optimal structural solution.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(x) for x in row] for row in rows]
    b = [Fraction(x) for x in rhs]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]

    # tableau columns: 0..n-1 structural, n..n+m-1 artificial, then rhs
    tab = [a[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # cost row for min sum(artificials), with basic columns priced out
    cost = [ZERO] * (n + m + 1)
    for j in range(n):
        cost[j] = -sum(tab[i][j] for i in range(m))
    cost[n + m] = -sum(b)

    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        # ratio test; Bland tie-break on the leaving variable index
        leave = None
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][n + m] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 objective unbounded; malformed input")
        piv = tab[leave][enter]
        inv = 1 / piv
        prow = [x * inv for x in tab[leave]]
        tab[leave] = prow
        nonzero = [j for j, x in enumerate(prow) if x]
        for i in range(m):
            if i != leave:
                coef = tab[i][enter]
                if coef:
                    row = tab[i]
                    for j in nonzero:
                        row[j] -= coef * prow[j]
        coef = cost[enter]
        if coef:
            for j in nonzero:
                cost[j] -= coef * prow[j]
        basis[leave] = enter

    z_star = -cost[n + m]
    w = [ZERO] * n
    for i, var in enumerate(basis):
        if var < n:
            w[var] = tab[i][n + m]
    return z_star, w


def convex_combination(
    columns: list[tuple], point, tol: Fraction = ZERO
) -> tuple[bool, list[Fraction], Fraction]:
    """Express `point` as a convex combination of `columns` if possible.

    Builds the system [columns | ones] w = [point | 1] and runs phase-1.
    Returns (feasible within tol, weights, z_star).
    """
    dim = len(point)
    rows = [[col[i] for col in columns] for i in range(dim)]
    rows.append([ONE] * len(columns))
    rhs = [Fraction(x) for x in point] + [ONE]
    z_star, w = phase1(rows, rhs)
    return z_star <= tol, w, z_star
