"""Extreme rays of pointed rational cones by the double description method.

Given integer inequality rows a_1..a_k, the cone {x : a_i . x >= 0} is
processed incrementally: start from a simplicial cone built out of n
linearly independent rows, then clip with the remaining rows one at a
time, combining adjacent ray pairs that straddle each new hyperplane
(Motzkin et al.; adjacency test of Fukuda & Prodon).  All arithmetic is
over arbitrary-precision integers, so the output is exact regardless of
how degenerate the cone is - and the 0/1 polytopes this package feeds in
are about as degenerate as they come.

Rays are returned as primitive integer tuples (gcd 1).  The caller owns
the translation between cones and polytopes (homogenization, facet
orientation and so on).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class NotPointedError(Exception):
    """Cone contains a line; carries one integer direction of the lineality space."""

    def __init__(self, rank: int, direction: tuple[int, ...]):
        self.rank = rank
        self.direction = direction
        super().__init__(f"cone is not pointed (row rank {rank} < {len(direction)})")


def primitive(vec) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in vec)
    return tuple(vec)


def rational_to_primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to primitive integers."""
    den = 1
    for q in vec:
        den = lcm(den, Fraction(q).denominator)
    return primitive(tuple(int(q * den) for q in vec))


def _rref(rows: list[tuple[int, ...]], n: int):
    """Reduced row echelon form over Fractions.

    Returns (pivot_cols, chosen_row_indices, reduced_rows).  Row order of
    `rows` decides which rows get chosen, so the result is deterministic.
    """
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen: list[int] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b, p in zip(basis, pivots):
            if v[p]:
                coef = v[p]
                v = [x - coef * y for x, y in zip(v, b)]
        pivot = next((j for j, x in enumerate(v) if x), None)
        if pivot is None:
            continue
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        # keep fully reduced: clear the new pivot column in earlier rows
        for k, b in enumerate(basis):
            if b[pivot]:
                coef = b[pivot]
                basis[k] = [x - coef * y for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(pivot)
        chosen.append(idx)
        if len(basis) == n:
            break
    return pivots, chosen, basis


def row_rank(rows: list[tuple[int, ...]]) -> int:
    if not rows:
        return 0
    _, chosen, _ = _rref(rows, len(rows[0]))
    return len(chosen)


def nullspace_direction(rows: list[tuple[int, ...]], n: int) -> tuple[int, ...]:
    """One primitive integer vector orthogonal to all rows (rank must be < n)."""
    pivots, _, basis = _rref(rows, n)
    free = next(j for j in range(n) if j not in pivots)
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for b, p in zip(basis, pivots):
        x[p] = -b[free]
    return rational_to_primitive(x)


def _initial_simplicial_rays(rows, chosen, n):
    """Extreme rays of the cone cut out by n independent rows.

    Ray j is the j-th column of the inverse of the chosen row matrix,
    scaled positive-primitive: it satisfies row_i . r_j = 0 for i != j
    and row_j . r_j > 0.
    """
    mat = [[Fraction(x) for x in rows[i]] for i in chosen]
    aug = [mat[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                coef = aug[r][col]
                aug[r] = [x - coef * y for x, y in zip(aug[r], aug[col])]
    rays = []
    for j in range(n):
        rays.append(rational_to_primitive([aug[i][n + j] for i in range(n)]))
    return rays


def extreme_rays(rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """All extreme rays of {x : row . x >= 0 for every row}, exactly.

    Raises NotPointedError when the rows do not have full column rank
    (the cone then contains a full line and has no ray description).
    """
    if not rows:
        raise NotPointedError(0, ())
    n = len(rows[0])
    pivots, chosen, _ = _rref(rows, n)
    if len(chosen) < n:
        raise NotPointedError(len(chosen), nullspace_direction(rows, n))

    # process the n independent rows first (simplicial start), the rest after
    order = chosen + [i for i in range(len(rows)) if i not in set(chosen)]
    rays: list[tuple[int, ...]] = _initial_simplicial_rays(rows, chosen, n)
    allbits = (1 << n) - 1
    zsets: list[int] = [allbits ^ (1 << j) for j in range(n)]

    for k in range(n, len(order)):
        a = rows[order[k]]
        dots = [sum(x * y for x, y in zip(a, r)) for r in rays]
        if min(dots, default=0) >= 0:
            bit = 1 << k
            for i, s in enumerate(dots):
                if s == 0:
                    zsets[i] |= bit
            continue
        pos = [i for i, s in enumerate(dots) if s > 0]
        neg = [i for i, s in enumerate(dots) if s < 0]
        new_rays: list[tuple[int, ...]] = []
        new_zsets: list[int] = []
        bit = 1 << k
        rank_floor = n - 2
        for i in pos:
            zi = zsets[i]
            si = dots[i]
            ri = rays[i]
            for j in neg:
                t = zi & zsets[j]
                # a common tight set of rank < n-2 cannot span a 2-face
                if t.bit_count() < rank_floor:
                    continue
                adjacent = True
                for m, zm in enumerate(zsets):
                    if m != i and m != j and t & ~zm == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                sj = dots[j]
                w = primitive(tuple(si * y - sj * x for x, y in zip(ri, rays[j])))
                new_rays.append(w)
                new_zsets.append(t | bit)
        keep_rays = []
        keep_zsets = []
        for m, s in enumerate(dots):
            if s > 0:
                keep_rays.append(rays[m])
                keep_zsets.append(zsets[m])
            elif s == 0:
                keep_rays.append(rays[m])
                keep_zsets.append(zsets[m] | bit)
        rays = keep_rays + new_rays
        zsets = keep_zsets + new_zsets
    return rays
