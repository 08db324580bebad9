"""Slow reference implementations for cross-checking the engines.

Nothing here imports the lattice, cone or semigroup engines.  Cone
membership is decided either by Caratheodory (try every linearly independent
subset of generators) or by facet normals found from every (r-1)-subset of
generators; semigroup membership by listing sums of generators, either by
count or by increasing grading.  Generators are assumed to span Z^r and to
lie in an open half-space given by the ``grading`` functional.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _solve_exact(cols: Sequence[Sequence[int]], v: Sequence[int]):
    """Unique solution of ``sum x_j cols_j = v`` when the columns are
    independent and v is in their span; None otherwise."""
    n, m = len(v), len(cols)
    rows = [[Fraction(cols[j][i]) for j in range(m)] + [Fraction(v[i])] for i in range(n)]
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if p is None:
            return None  # dependent columns
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    if any(rows[i][m] != 0 for i in range(r, n)):
        return None
    return [rows[i][m] for i in range(m)]


def in_cone(gens: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Caratheodory: v is a nonnegative combination of independent generators."""
    if not any(v):
        return True
    r = len(v)
    for k in range(1, min(r, len(gens)) + 1):
        for subset in combinations(gens, k):
            x = _solve_exact(subset, v)
            if x is not None and all(t >= 0 for t in x):
                return True
    return False


def reachable(gens: Sequence[Sequence[int]], coeff_bound: int) -> set[tuple[int, ...]]:
    """Every sum of at most ``coeff_bound`` generators (with repetition)."""
    r = len(gens[0])
    layer = {(0,) * r}
    seen = set(layer)
    for _ in range(coeff_bound):
        layer = {tuple(a + b for a, b in zip(p, g)) for p in layer for g in gens} - seen
        seen |= layer
    return seen


def brute_member(gens: Sequence[Sequence[int]], v: Sequence[int], coeff_bound: int) -> bool:
    """Scan every nonnegative coefficient vector with sum at most the bound."""
    gens = [tuple(g) for g in gens]
    v = tuple(v)
    n = len(gens)

    def rec(i, budget, rem):
        if not any(rem):
            return True
        if i == n:
            return False
        for c in range(budget + 1):
            if rec(i + 1, budget - c, tuple(x - c * y for x, y in zip(rem, gens[i]))):
                return True
        return False

    return rec(0, coeff_bound, v)


def _det(rows) -> Fraction:
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def cone_inequalities(gens: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Facet normals of a full-dimensional cone, by brute force.

    Every facet is spanned by r - 1 independent generators; the generalized
    cross product of such a subset is a normal, kept when all generators lie
    weakly on one side of it.
    """
    gens = [tuple(g) for g in gens if any(g)]
    r = len(gens[0])
    out = set()
    for subset in combinations(gens, r - 1):
        n = [int((-1) ** i * _det([[g[k] for k in range(r) if k != i] for g in subset])) for i in range(r)]
        if not any(n):
            continue
        signs = {(_dot(n, g) > 0) - (_dot(n, g) < 0) for g in gens} - {0}
        if len(signs) == 1:
            sgn = signs.pop()
            c = gcd(*n)
            out.add(tuple(sgn * x // c for x in n))
    return sorted(out)


def lattice_box(gens, grading, degree_bound):
    """Every lattice point of the cone with grading at most the bound, and a
    cone membership test.

    A cone point ``sum c_i g_i`` with grading D has coordinate ``k`` at most
    ``D max_i |g_ik| / <grading, g_i>`` in absolute value.
    """
    gens = [tuple(g) for g in gens if any(g)]
    if min(_dot(grading, g) for g in gens) <= 0:
        raise ValueError("grading must be positive on every generator")
    ineqs = cone_inequalities(gens)

    def inside(v):
        return all(_dot(a, v) >= 0 for a in ineqs)

    r = len(gens[0])
    radius = [int(degree_bound * max(Fraction(abs(g[k]), _dot(grading, g)) for g in gens)) for k in range(r)]
    pts = [v for v in product(*(range(-b, b + 1) for b in radius))
           if _dot(grading, v) <= degree_bound and inside(v)]
    return pts, inside


def members_up_to(gens: Sequence[Sequence[int]], grading: Sequence[int], degree_bound: int,
                  pts=None) -> set[tuple[int, ...]]:
    """Sums of generators with grading at most the bound, by increasing grading."""
    gens = [tuple(g) for g in gens if any(g)]
    if pts is None:
        pts, _ = lattice_box(gens, grading, degree_bound)
    out = set()
    for v in sorted(pts, key=lambda v: _dot(grading, v)):
        if not any(v) or any(tuple(a - b for a, b in zip(v, g)) in out for g in gens):
            out.add(v)
    return out


def brute_holes(gens: Sequence[Sequence[int]], degree_bound: int,
                grading: Sequence[int]) -> list[tuple[int, ...]]:
    """Lattice points of the cone with grading at most the bound that are not sums of generators."""
    pts, _ = lattice_box(gens, grading, degree_bound)
    members = members_up_to(gens, grading, degree_bound, pts)
    return sorted((v for v in pts if v not in members), key=lambda v: (_dot(grading, v), v))


def brute_saturation_point(gens: Sequence[Sequence[int]], p: Sequence[int], degree_bound: int,
                           grading: Sequence[int]) -> bool:
    """No hole in ``p + cone`` among points of grading at most the bound."""
    p = tuple(p)
    _, inside = lattice_box(gens, grading, 0)
    return not any(inside(tuple(a - b for a, b in zip(v, p)))
                   for v in brute_holes(gens, degree_bound, grading))


def brute_saturation_points(gens: Sequence[Sequence[int]], candidates: Sequence[Sequence[int]],
                            slack: int, grading: Sequence[int]) -> dict[tuple[int, ...], bool]:
    """``brute_saturation_point`` for many candidates at once.

    Candidate ``p`` is scanned up to grading ``<grading, p> + slack``; the
    hole list is built once for the largest bound.
    """
    cands = [tuple(p) for p in candidates]
    if not cands:
        return {}
    top = max(_dot(grading, p) for p in cands) + slack
    holes = brute_holes(gens, top, grading)
    _, inside = lattice_box(gens, grading, 0)
    out = {}
    for p in cands:
        limit = _dot(grading, p) + slack
        out[p] = not any(_dot(grading, v) <= limit and inside(tuple(a - b for a, b in zip(v, p)))
                         for v in holes)
    return out


# -- toric surfaces --------------------------------------------------------------

def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _primitive(v):
    g = gcd(*v)
    return tuple(x // g for x in v)


def toric_cone_2d(gens: Sequence[Sequence[int]]):
    """The two boundary generators (a, b) of a pointed plane cone, counterclockwise,
    or None when the cone contains a line."""
    gens = [tuple(g) for g in gens if any(g)]
    for a in gens:
        for b in gens:
            if _cross(a, b) > 0 and all(_cross(a, g) >= 0 and _cross(g, b) >= 0 for g in gens):
                return _primitive(a), _primitive(b)
    return None


def toric_flexible_2d(gens: Sequence[Sequence[int]], multiples: int = 30) -> bool:
    """Flexibility of the affine toric surface of a semigroup in Z^2.

    Flexible exactly when the cone is pointed and both of its boundary rays
    carry a saturation point.  Saturation points are searched among the
    first ``multiples`` lattice points of each boundary ray; the hole scan
    above a candidate reaches past the a priori bound on module generators.
    """
    gens = [tuple(g) for g in gens if any(g)]
    edges = toric_cone_2d(gens)
    if edges is None:
        return False
    a, b = edges
    grading = (b[1] - a[1], a[0] - b[0])  # normal to the segment from a to b
    if _dot(grading, a) <= 0:
        grading = tuple(-x for x in grading)
    top = sorted((_dot(grading, g) for g in gens), reverse=True)
    slack = sum(top[:2])
    top_degree = multiples * max(_dot(grading, a), _dot(grading, b)) + slack
    cone_pts, _ = lattice_box(gens, grading, top_degree)
    members = members_up_to(gens, grading, top_degree, cone_pts)

    def inside(v):
        return _cross(a, v) >= 0 and _cross(v, b) >= 0

    for edge in (a, b):
        found = False
        for k in range(multiples + 1):
            p = (k * edge[0], k * edge[1])
            if p not in members:
                continue
            limit = _dot(grading, p) + slack
            shifted = (u for u in cone_pts if _dot(grading, u) <= limit
                       and inside((u[0] - p[0], u[1] - p[1])))
            if all(u in members for u in shifted):
                found = True
                break
        if not found:
            return False
    return True
