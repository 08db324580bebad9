"""Nonnegative integer feasibility of ``A x = b`` with replayable certificates.

The decision runs three stages:

1. rational LP feasibility; on failure a Farkas functional ``y`` with
   ``y A >= 0`` and ``y b < 0`` is returned;
2. variables forced to zero by the LP are removed and the rest of the system
   is solved over Z; on failure the obstruction is a pair (``y`` proving the
   forced zeros, rational ``w`` with ``w A`` integral on the free columns and
   ``w b`` fractional);
3. exhaustive search over ``x`` with ``sum(x) <= bound``.  When the LP
   polytope is bounded and the bound covers it, a failed search is itself a
   certificate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence, Union

from ..errors import ShapeMismatch
from . import lp
from .lattice import integer_solve
from .vectors import IntVector, dot, transpose


@dataclass(frozen=True)
class Solution:
    x: IntVector


@dataclass(frozen=True)
class FarkasCertificate:
    y: tuple[Fraction, ...]

    def replay(self, a, b) -> bool:
        cols = transpose(a) if a else []
        return all(dot(self.y, col) >= 0 for col in cols) and dot(self.y, b) < 0


@dataclass(frozen=True)
class CongruenceCertificate:
    y: tuple[Fraction, ...]
    forced: tuple[int, ...]
    w: tuple[Fraction, ...]

    def replay(self, a, b) -> bool:
        cols = transpose(a) if a else []
        if dot(self.y, b) != 0:
            return False
        for j, col in enumerate(cols):
            v = dot(self.y, col)
            if v < 0 or (j in self.forced and v <= 0):
                return False
        for j, col in enumerate(cols):
            if j not in self.forced and Fraction(dot(self.w, col)).denominator != 1:
                return False
        return Fraction(dot(self.w, b)).denominator != 1


@dataclass(frozen=True)
class ExhaustiveCertificate:
    """``y A >= 1`` on the nonzero columns bounds the coefficient sum of a
    least-sum solution by ``floor(y b)``; the search up to ``bound`` found
    nothing."""

    y: tuple[Fraction, ...]
    bound: int

    def replay(self, a, b) -> bool:
        cols = transpose(a) if a else []
        if any(dot(self.y, col) < 1 for col in cols if any(col)):
            return False
        if self.bound < floor(dot(self.y, b)):
            return False
        return _search(a, b, self.bound) is None


@dataclass(frozen=True)
class InfeasibleCertified:
    reason: str  # "lp" | "congruence" | "exhaustive"
    certificate: Union[FarkasCertificate, CongruenceCertificate, ExhaustiveCertificate]


@dataclass(frozen=True)
class UnknownUpToBound:
    bound: int


IntFeasibility = Union[Solution, InfeasibleCertified, UnknownUpToBound]


def _check_shape(a, b):
    if len(a) != len(b):
        raise ShapeMismatch(f"{len(a)} rows but right-hand side of length {len(b)}")
    if a and any(len(r) != len(a[0]) for r in a):
        raise ShapeMismatch("ragged matrix")


def farkas_certificate(a, b, n: int) -> FarkasCertificate | None:
    """Certificate that ``{x >= 0 : A x = b}`` is empty, if it is."""
    cols = transpose(a) if a else [[] for _ in range(n)]
    m = len(b)
    y = lp.free_feasible([list(b)], [-1], cols, [0] * n, m)
    return FarkasCertificate(y) if y is not None else None


def forced_zeros(a, b, n: int) -> list[int]:
    """Variables that vanish on every nonnegative rational solution."""
    out = []
    for i in range(n):
        rows = [list(r) + [0] for r in a]
        rows.append([int(j == i) for j in range(n)] + [1])
        c = [0] * (n + 1)
        c[i] = -1
        res = lp.minimize(c, rows, list(b) + [1])
        if res.status == "optimal" and res.value == 0:
            out.append(i)
    return out


def _forced_zero_functional(a, b, n: int, forced: Sequence[int]):
    m = len(b)
    if not forced:
        return tuple(Fraction(0) for _ in range(m))
    cols = transpose(a) if a else [[] for _ in range(n)]
    return lp.free_feasible([list(b)], [0], cols, [int(j in forced) for j in range(n)], m)


def congruence_certificate(a, b, n: int) -> CongruenceCertificate | None:
    """Obstruction from LP-forced zeros plus integrality of the rest, if any."""
    forced = forced_zeros(a, b, n)
    free = [j for j in range(n) if j not in forced]
    reduced = [[r[j] for j in free] for r in a]
    x, w = integer_solve(reduced, list(b), len(free))
    if w is None:
        return None
    y = _forced_zero_functional(a, b, n, forced)
    if y is None:  # cannot happen when the LP is feasible
        return None
    return CongruenceCertificate(tuple(y), tuple(forced), tuple(w))


def _bounding_functional(a, b, n: int):
    """Some y with ``y . col >= 1`` on every nonzero column.

    Zero columns never help, so a least-sum solution leaves them at 0 and
    the bound ``sum(x) <= y . b`` only has to hold on the others.
    """
    cols = [c for c in transpose(a) if any(c)] if a else []
    return lp.free_feasible([], [], cols, [1] * len(cols), len(b))


def _search(a, b, bound: int) -> IntVector | None:
    cols = [tuple(c) for c in transpose(a)] if a else []
    n = len(cols)
    failed: set = set()
    x = [0] * n

    def rec(rem: tuple, budget: int, start: int) -> bool:
        if not any(rem):
            return True
        if budget == 0:
            return False
        key = (rem, budget, start)
        if key in failed:
            return False
        for j in range(start, n):
            col = cols[j]
            if not any(col):
                continue
            x[j] += 1
            if rec(tuple(r - c for r, c in zip(rem, col)), budget - 1, j):
                return True
            x[j] -= 1
        failed.add(key)
        return False

    # Iterative deepening: the first solution found has minimal sum(x).
    for budget in range(bound + 1):
        if rec(tuple(b), budget, 0):
            return tuple(x)
    return None


def solve_nonneg_integer(a: Sequence[Sequence[int]], b: Sequence[int], bound: int,
                         n: int | None = None) -> IntFeasibility:
    """Decide whether some integer ``x >= 0`` satisfies ``A x = b``."""
    a = [list(r) for r in a]
    b = list(b)
    _check_shape(a, b)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    n = n if n is not None else (len(a[0]) if a else 0)
    if not any(b):
        return Solution((0,) * n)
    if lp.feasible_point(a, b, n) is None:
        cert = farkas_certificate(a, b, n)
        return InfeasibleCertified("lp", cert)
    cong = congruence_certificate(a, b, n)
    if cong is not None:
        return InfeasibleCertified("congruence", cong)
    x = _search(a, b, bound)
    if x is not None:
        return Solution(x)
    y = _bounding_functional(a, b, n)
    if y is not None and bound >= floor(dot(y, b)):
        return InfeasibleCertified("exhaustive", ExhaustiveCertificate(tuple(y), bound))
    return UnknownUpToBound(bound)


def columns_to_matrix(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    """Matrix whose columns are the given vectors."""
    return transpose(columns)
