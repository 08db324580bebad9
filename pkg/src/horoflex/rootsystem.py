"""Root data of G = G' x (K^*)^s in fundamental-weight coordinates.

A weight is an integer vector whose first ``semisimple_rank`` coordinates are
its coordinates in the fundamental weights of the simple factors (factor by
factor, Bourbaki numbering) and whose last ``torus_rank`` coordinates are its
torus characters.  Dominance is then a sign condition on the first block, and
because (alpha_i, omega_j) is a positive multiple of delta_ij, a simple root
pairs nontrivially with a dominant weight exactly when that weight's i-th
fundamental coordinate is nonzero.

Simple roots are indexed globally from 0 across the factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .cones import Cone
from .errors import BadGroupSpec, NotDominant
from .exactlat.vectors import IntVector, unit

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_FIXED = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

# Classical positive-root counts, used only to validate the closure.
POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class GroupSpec:
    simple_factors: tuple[tuple[str, int], ...]
    torus_rank: int = 0

    def __post_init__(self):
        factors = tuple((str(t).upper(), int(n)) for t, n in self.simple_factors)
        object.__setattr__(self, "simple_factors", factors)
        if self.torus_rank < 0:
            raise BadGroupSpec("torus rank must be nonnegative")
        for t, n in factors:
            if t in _MIN_RANK:
                if n < _MIN_RANK[t]:
                    raise BadGroupSpec(f"{t}{n}: rank must be at least {_MIN_RANK[t]}")
            elif t in _FIXED:
                if n not in _FIXED[t]:
                    raise BadGroupSpec(f"{t}{n} is not a root system")
            else:
                raise BadGroupSpec(f"unknown simple type {t!r}")

    @property
    def semisimple_rank(self) -> int:
        return sum(n for _, n in self.simple_factors)

    @property
    def ambient_dim(self) -> int:
        return self.semisimple_rank + self.torus_rank

    def __str__(self) -> str:
        parts = [f"{t}{n}" for t, n in self.simple_factors]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return " x ".join(parts) or "trivial"


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    """Cartan matrix with entry [i][j] = <alpha_j, alpha_i^vee>."""
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        c[i][j], c[j][i] = cij, cji

    if kind in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if kind == "B":
            link(n - 2, n - 1, -1, -2)  # alpha_n short
        elif kind == "C":
            link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif kind == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif kind == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return c


@lru_cache(maxsize=None)
def _factor_roots(kind: str, n: int) -> tuple[IntVector, ...]:
    """Positive roots of one simple factor in simple-root coordinates."""
    cm = cartan_matrix(kind, n)
    simple = [unit(n, i) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                while True:
                    down = tuple(b - (p + 1) * int(j == i) for j, b in enumerate(beta))
                    if down in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * cm[i][j] for j in range(n))
                q = p - pairing
                if q > 0:
                    up = tuple(b + int(j == i) for j, b in enumerate(beta))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    out = tuple(sorted(roots, key=lambda r: (sum(r), r)))
    if len(out) != POSITIVE_ROOT_COUNT[kind](n):
        raise AssertionError(f"root closure for {kind}{n} produced {len(out)} roots")
    return out


@dataclass(frozen=True)
class RootDatum:
    positive_roots: tuple[IntVector, ...]
    cartan: tuple[tuple[int, ...], ...]


def positive_roots(g: GroupSpec) -> RootDatum:
    """Positive roots of G' in simple-root coordinates, factors concatenated."""
    total = g.semisimple_rank
    roots = []
    cartan = [[0] * total for _ in range(total)]
    offset = 0
    for kind, n in g.simple_factors:
        for r in _factor_roots(kind, n):
            roots.append((0,) * offset + r + (0,) * (total - offset - n))
        cm = cartan_matrix(kind, n)
        for i in range(n):
            for j in range(n):
                cartan[offset + i][offset + j] = cm[i][j]
        offset += n
    return RootDatum(tuple(roots), tuple(tuple(r) for r in cartan))


def dominant_chamber(g: GroupSpec) -> Cone:
    """The fundamental Weyl chamber in weight coordinates."""
    d = g.ambient_dim
    return Cone.from_inequalities([unit(d, i) for i in range(g.semisimple_rank)], d)


def check_dominant(g: GroupSpec, weights: Iterable[Sequence[int]]) -> None:
    for w in weights:
        if len(w) != g.ambient_dim:
            raise BadGroupSpec(f"weight {tuple(w)} has length {len(w)}, expected {g.ambient_dim}")
        if any(w[i] < 0 for i in range(g.semisimple_rank)):
            raise NotDominant(f"weight {tuple(w)} has a negative fundamental coordinate")


def support_of_semigroup(g: GroupSpec, generators: Iterable[Sequence[int]]) -> frozenset[int]:
    """Simple roots pairing nontrivially with some element of the semigroup."""
    generators = list(generators)
    check_dominant(g, generators)
    return frozenset(i for i in range(g.semisimple_rank) if any(w[i] for w in generators))


def delta(g: GroupSpec, support: Iterable[int]) -> int:
    """Number of positive roots whose simple-root support lies inside ``support``."""
    s = set(support)
    return sum(1 for r in positive_roots(g).positive_roots
               if all(i in s for i, c in enumerate(r) if c))
