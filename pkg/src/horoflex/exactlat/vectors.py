"""Small helpers for integer and rational vectors stored as tuples."""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import ZeroVector

IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> tuple:
    return tuple(c * a for a in v)


def neg(v: Sequence[int]) -> IntVector:
    return tuple(-a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def norm1(v: Sequence[int]) -> int:
    return sum(abs(a) for a in v)


def content(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def primitive_vector(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries, keeping its direction."""
    g = content(v)
    if g == 0:
        raise ZeroVector("primitive_vector of the zero vector")
    return tuple(a // g for a in v)


def clear_denominators(v: Sequence) -> IntVector:
    """Smallest positive integer multiple of a rational vector, made primitive.

    The zero vector is returned unchanged.
    """
    fr = [Fraction(a) for a in v]
    den = reduce(lcm, (a.denominator for a in fr), 1)
    iv = tuple(int(a * den) for a in fr)
    if is_zero(iv):
        return iv
    return primitive_vector(iv)


def unit(n: int, i: int) -> IntVector:
    return tuple(1 if j == i else 0 for j in range(n))


def as_int_vector(v: Iterable) -> IntVector:
    out = []
    for a in v:
        if isinstance(a, bool) or not isinstance(a, (int, Fraction)):
            raise TypeError(f"expected integer coordinate, got {a!r}")
        if isinstance(a, Fraction):
            if a.denominator != 1:
                raise ValueError(f"non-integer coordinate {a}")
            a = a.numerator
        out.append(int(a))
    return tuple(out)


def transpose(rows: Sequence[Sequence]) -> list[list]:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [p * x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Sequence[Sequence], n: int) -> list[IntVector]:
    """Integer basis (primitive vectors) of the rational kernel {x : rows . x = 0}."""
    m = [[Fraction(a) for a in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -m[i][f]
        basis.append(clear_denominators(x))
    return basis


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> RatVector | None:
    """One rational solution x of rows . x = rhs, or None."""
    if not rows:
        return None if any(rhs) else ()
    n = len(rows[0])
    m = [[Fraction(a) for a in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][n] != 0 for i in range(r, len(m))):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = m[i][n]
    return tuple(x)


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
