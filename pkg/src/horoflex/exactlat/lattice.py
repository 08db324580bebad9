"""Integer lattices: Hermite and Smith normal forms, lattice coordinates,
and solving linear systems over the integers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import EmptyInput, ShapeMismatch
from .vectors import IntVector, as_int_vector


@dataclass(frozen=True)
class LatticeBasis:
    """Canonical basis of a sublattice of Z^ambient_dim.

    Rows are in lower-triangular row Hermite form: the last nonzero entry
    ("pivot") of each row is positive, pivot columns strictly increase from
    row to row, and every entry lying below a pivot is reduced into
    ``[0, pivot)``.  Two lattices are equal iff their bases are equal.
    """

    ambient_dim: int
    basis_rows: tuple[IntVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    def pivots(self) -> list[int]:
        return [max(j for j, a in enumerate(r) if a) for r in self.basis_rows]

    def to_ambient(self, coords: Sequence[int]) -> IntVector:
        out = [0] * self.ambient_dim
        for c, row in zip(coords, self.basis_rows):
            if c:
                for j, a in enumerate(row):
                    out[j] += c * a
        return tuple(out)


def _upper_hnf(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Row-style upper Hermite form (pivot = first nonzero entry)."""
    m = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[best] = m[best], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            p = m[r][c]
            for i in range(r):
                q = m[i][c] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
        m = m[:r] + [row for row in m[r:] if any(row)]
    return m[:r]


def hermite_basis(generators: Sequence[Sequence[int]]) -> LatticeBasis:
    """Canonical basis of the integer span of ``generators``."""
    if not generators:
        raise EmptyInput("hermite_basis needs at least one generator")
    gens = [as_int_vector(g) for g in generators]
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ShapeMismatch("generators of different dimensions")
    # Lower-triangular form is the upper form with both coordinate order and
    # row order reversed.
    rev = [list(reversed(g)) for g in gens]
    h = _upper_hnf(rev, n)
    rows = tuple(tuple(reversed(r)) for r in reversed(h))
    return LatticeBasis(n, rows)


def coordinates_in_lattice(v: Sequence[int], lat: LatticeBasis) -> IntVector | None:
    """Integer c with sum c_i * basis_i == v, or None when v is not in the lattice."""
    v = as_int_vector(v)
    if len(v) != lat.ambient_dim:
        raise ShapeMismatch(f"vector of length {len(v)} in ambient dimension {lat.ambient_dim}")
    rest = list(v)
    coords = [0] * lat.rank
    pivots = lat.pivots()
    for k in range(lat.rank - 1, -1, -1):
        row, p = lat.basis_rows[k], pivots[k]
        q, rem = divmod(rest[p], row[p])
        if rem:
            return None
        coords[k] = q
        if q:
            rest = [x - q * y for x, y in zip(rest, row)]
    if any(rest):
        return None
    return tuple(coords)


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_form(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form ``D = P A Q`` with P, Q unimodular.

    Returns ``(P, D, Q, rank)``; D is diagonal with nonnegative entries, the
    first ``rank`` of them nonzero and each dividing the next.
    """
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    d = [list(r) for r in a]
    p, q = identity(m), identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in d:
            row[dst] += f * row[src]
        for row in q:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // d[t][t]))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // d[t][t]))
                    clean = clean and d[t][j] == 0
            if not clean:
                cand = [(abs(d[i][t]), i, t) for i in range(t, m) if d[i][t]]
                cand += [(abs(d[t][j]), t, j) for j in range(t, n) if d[t][j]]
                _, i1, j1 = min(cand)
                swap_rows(t, i1)
                swap_cols(t, j1)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            p[t] = [-x for x in p[t]]
        t += 1
    return p, d, q, t


def _matvec(mat, v):
    return [sum(a * b for a, b in zip(row, v)) for row in mat]


def integer_solve(a: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """Solve ``A x = b`` over Z, ignoring signs.

    Returns ``(x, None)`` on success and ``(None, w)`` otherwise, where ``w`` is
    a rational row vector with ``w A`` integral and ``w b`` not an integer.
    """
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if len(b) != m:
        raise ShapeMismatch("right-hand side has wrong length")
    if m == 0:
        return (0,) * n, None
    p, d, q, r = smith_form(a, n)
    c = _matvec(p, b)
    y = [0] * n
    for i in range(m):
        if i < r:
            if c[i] % d[i][i]:
                return None, tuple(Fraction(x, d[i][i]) for x in p[i])
            y[i] = c[i] // d[i][i]
        elif c[i] != 0:
            return None, tuple(Fraction(x, 2 * c[i]) for x in p[i])
    return tuple(_matvec(q, y)), None


def integer_kernel(a: Sequence[Sequence[int]], n: int) -> list[IntVector]:
    """Basis of the lattice {x in Z^n : A x = 0}."""
    if not a:
        return [tuple(r) for r in identity(n)]
    _, _, q, r = smith_form(a, n)
    return [tuple(q[i][j] for i in range(n)) for j in range(r, n)]


def inverse_unimodular(u: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(u)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(u)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    out = [[x for x in row[n:]] for row in m]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def extend_to_unimodular(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Unimodular n x n matrix whose first k rows span the same lattice as
    ``rows`` (which must span a saturated sublattice of rank k)."""
    if not rows:
        return identity(n)
    p, d, q, r = smith_form(rows, n)
    if any(d[i][i] != 1 for i in range(r)):
        raise ValueError("lattice is not saturated")
    return inverse_unimodular(q)
