"""Exact rational linear programming (two-phase simplex, Bland's rule)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(t: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    pr = t[row]
    pv = pr[col]
    if pv != 1:
        pr[:] = [x / pv for x in pr]
    for i, r in enumerate(t):
        if i != row:
            f = r[col]
            if f:
                r[:] = [x - f * y for x, y in zip(r, pr)]
    basis[row] = col


def _run(t, basis, ncols, allowed) -> bool:
    """Minimize the objective stored in the last row.  False if unbounded."""
    obj = t[-1]
    while True:
        col = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(len(t) - 1):
            a = t[i][col]
            if a > 0:
                ratio = t[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(t, basis, best[1], col)


def minimize(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Minimize ``c.x`` subject to ``A x = b`` and ``x >= 0`` exactly."""
    n = len(c)
    rows = []
    for r, b in zip(a_eq, b_eq):
        r = [Fraction(x) for x in r]
        b = Fraction(b)
        if b < 0:
            r, b = [-x for x in r], -b
        rows.append((r, b))
    m = len(rows)
    # Phase I: artificial columns n .. n+m-1.
    t = []
    for i, (r, b) in enumerate(rows):
        t.append(r + [Fraction(int(i == k)) for k in range(m)] + [b])
    obj = [Fraction(0)] * (n + m + 1)
    for r in t:
        for j in range(n):
            obj[j] -= r[j]
        obj[-1] -= r[-1]
    t.append(obj)
    basis = list(range(n, n + m))
    _run(t, basis, n + m, [True] * n + [False] * m)
    if t[-1][-1] != 0:
        return LPResult("infeasible")
    # Drive remaining artificials out of the basis; drop redundant rows.
    i = 0
    while i < len(t) - 1:
        if basis[i] >= n:
            col = next((j for j in range(n) if t[i][j] != 0), None)
            if col is None:
                del t[i]
                del basis[i]
                continue
            _pivot(t, basis, i, col)
        i += 1
    # Phase II.
    width = n + m + 1
    obj = [Fraction(0)] * width
    for j in range(n):
        obj[j] = Fraction(c[j])
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f:
            obj = [x - f * y for x, y in zip(obj, t[i])]
    t[-1] = obj
    if not _run(t, basis, n + m, [True] * n + [False] * m):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = t[i][-1]
    return LPResult("optimal", tuple(x), -t[-1][-1])


def feasible_point(a_eq: Sequence[Sequence], b_eq: Sequence, n: int) -> tuple[Fraction, ...] | None:
    """Some x >= 0 with A x = b, or None."""
    res = minimize([0] * n, a_eq, b_eq)
    return res.x if res.status == "optimal" else None


def free_feasible(a_eq: Sequence[Sequence], b_eq: Sequence,
                  a_ge: Sequence[Sequence], b_ge: Sequence, n: int) -> tuple[Fraction, ...] | None:
    """Some x in Q^n (no sign constraint) with ``A_eq x = b_eq`` and ``A_ge x >= b_ge``."""
    k = len(a_ge)
    # x = xp - xn, slack s >= 0 for each >= row.
    rows, rhs = [], []
    for r, b in zip(a_eq, b_eq):
        rows.append(list(r) + [-x for x in r] + [0] * k)
        rhs.append(b)
    for i, (r, b) in enumerate(zip(a_ge, b_ge)):
        rows.append(list(r) + [-x for x in r] + [-int(i == j) for j in range(k)])
        rhs.append(b)
    z = feasible_point(rows, rhs, 2 * n + k)
    if z is None:
        return None
    return tuple(z[i] - z[n + i] for i in range(n))
