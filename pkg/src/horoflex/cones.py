"""Rational polyhedral cones with both generator and inequality descriptions.

All vectors are integer tuples; a cone lives in Q^ambient_dim and pairs with
its dual through the standard dot product.  The conversion between the two
descriptions is a double-description pass with the algebraic adjacency test,
done entirely in integer arithmetic.

Every cone is stored canonically: extremal rays are primitive, orthogonal to
the lineality space and lexicographically sorted; the lineality space is given
by the Hermite basis of its integer points.  Equal cones therefore compare
equal as Python values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadRay, NotStrictlyConvex, ShapeMismatch
from .exactlat.lattice import hermite_basis, integer_kernel
from .exactlat.vectors import (
    IntVector,
    as_int_vector,
    clear_denominators,
    dot,
    is_zero,
    neg,
    norm1,
    nullspace,
    primitive_vector,
    rank,
    solve_rational,
    unit,
)


def _dd(ineqs: Iterable[IntVector], d: int) -> tuple[list[IntVector], list[IntVector]]:
    """Lineality basis and extreme rays of {x : <a, x> >= 0 for a in ineqs}."""
    lin = [unit(d, i) for i in range(d)]
    rays: list[IntVector] = []
    processed: list[IntVector] = []
    for a in ineqs:
        if is_zero(a):
            continue
        vals = [dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v), None)
        if k is not None:
            l0, v0 = lin.pop(k), vals.pop(k)
            if v0 < 0:
                l0, v0 = neg(l0), -v0
            lin = [primitive_vector(tuple(v0 * x - v * y for x, y in zip(l, l0)))
                   for l, v in zip(lin, vals)]
            rays = [primitive_vector(tuple(v0 * x - dot(a, r) * y for x, y in zip(r, l0)))
                    for r in rays]
            rays.append(primitive_vector(l0))
            processed.append(a)
            continue
        pos, zero, negs = [], [], []
        for r in rays:
            v = dot(a, r)
            (pos if v > 0 else zero if v == 0 else negs).append((r, v))
        new = [r for r, _ in pos] + [r for r, _ in zero]
        target = d - len(lin) - 2
        for p, vp in pos:
            tp = [b for b in processed if dot(b, p) == 0]
            for n, vn in negs:
                common = [b for b in tp if dot(b, n) == 0]
                if len(common) < target or rank(common) != target:
                    continue
                new.append(primitive_vector(tuple(vp * y - vn * x for x, y in zip(p, n))))
        rays = list(dict.fromkeys(new))
        processed.append(a)
    return lin, rays


def _canonical(lin: list[IntVector], rays: list[IntVector], d: int):
    if not lin:
        return tuple(sorted(set(rays))), ()
    perp = nullspace(lin, d)
    lat = integer_kernel(perp, d) if perp else [unit(d, i) for i in range(d)]
    lin_basis = hermite_basis(lat).basis_rows
    gram = [[dot(u, v) for v in lin] for u in lin]
    out = set()
    for r in rays:
        c = solve_rational(gram, [dot(u, r) for u in lin])
        proj = [Fraction(x) - sum(ci * u[j] for ci, u in zip(c, lin)) for j, x in enumerate(r)]
        v = clear_denominators(proj)
        if not is_zero(v):
            out.add(v)
    return tuple(sorted(out)), lin_basis


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone.

    ``extremal`` are the primitive rays of the pointed part and ``lineality``
    an integer basis of the lineality space.  ``dual_extremal`` and
    ``dual_lineality`` describe the dual cone in the same way; together they
    are the minimal inequality description.
    """

    ambient_dim: int
    extremal: tuple[IntVector, ...]
    lineality: tuple[IntVector, ...]
    dual_extremal: tuple[IntVector, ...]
    dual_lineality: tuple[IntVector, ...]

    # -- construction -----------------------------------------------------
    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_dim: int | None = None) -> "Cone":
        gens = [as_int_vector(g) for g in gens]
        if ambient_dim is None:
            if not gens:
                raise ShapeMismatch("ambient dimension needed for an empty generator list")
            ambient_dim = len(gens[0])
        d = ambient_dim
        if any(len(g) != d for g in gens):
            raise ShapeMismatch("generators of the wrong length")
        dl, dr = _dd(gens, d)
        dext, dlin = _canonical(dl, dr, d)
        ineqs = _with_lineality(dext, dlin)
        l, r = _dd(ineqs, d)
        ext, lin = _canonical(l, r, d)
        c = cls(d, ext, lin, dext, dlin)
        for g in gens:
            if not c.contains(g):
                raise AssertionError(f"generator {g} violates computed inequalities")
        for r in c.rays:
            if not c.contains(r):
                raise AssertionError(f"ray {r} violates computed inequalities")
        return c

    @classmethod
    def from_inequalities(cls, ineqs: Iterable[Sequence[int]], ambient_dim: int) -> "Cone":
        ineqs = [as_int_vector(a) for a in ineqs]
        if any(len(a) != ambient_dim for a in ineqs):
            raise ShapeMismatch("inequalities of the wrong length")
        l, r = _dd(ineqs, ambient_dim)
        ext, lin = _canonical(l, r, ambient_dim)
        return cls.from_generators(_with_lineality(ext, lin), ambient_dim)

    # -- descriptions -------------------------------------------------------
    @property
    def rays(self) -> tuple[IntVector, ...]:
        """Canonical generating set: extremal rays plus +-lineality basis."""
        return _with_lineality(self.extremal, self.lineality)

    @property
    def ineqs(self) -> tuple[IntVector, ...]:
        return _with_lineality(self.dual_extremal, self.dual_lineality)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def dim(self) -> int:
        return rank(self.rays)

    @property
    def is_strictly_convex(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.dual_lineality

    # -- predicates ---------------------------------------------------------
    def contains(self, v: Sequence[int]) -> bool:
        return all(dot(a, v) >= 0 for a in self.ineqs)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def relative_interior_point(self) -> IntVector:
        n = self.ambient_dim
        return tuple(sum(r[i] for r in self.rays) for i in range(n))

    def __repr__(self) -> str:
        return f"cone({', '.join(map(str, self.rays))})" if self.rays else "cone()"


def _with_lineality(ext, lin) -> tuple[IntVector, ...]:
    return tuple(sorted(set(ext) | set(lin) | {neg(v) for v in lin}))


def cone(*gens: Sequence[int], ambient_dim: int | None = None) -> Cone:
    """Shorthand: ``cone((1, 0), (1, 2))``."""
    return Cone.from_generators(gens, ambient_dim)


def dual_cone(c: Cone) -> Cone:
    return Cone(c.ambient_dim, c.dual_extremal, c.dual_lineality, c.extremal, c.lineality)


def extremal_rays(c: Cone) -> list[IntVector]:
    if c.lineality:
        raise NotStrictlyConvex(f"{c} contains a line")
    return list(c.extremal)


def cone_dim(c: Cone) -> int:
    return c.dim


def is_full_dimensional(c: Cone) -> bool:
    return c.is_full_dimensional


def intersect(a: Cone, b: Cone) -> Cone:
    return Cone.from_inequalities(a.ineqs + b.ineqs, a.ambient_dim)


def hull(a: Cone, *more: Cone) -> Cone:
    gens = list(a.rays)
    for c in more:
        gens += list(c.rays)
    return Cone.from_generators(gens, a.ambient_dim)


@dataclass(frozen=True)
class FacePair:
    """A face ``tau`` of a cone together with its dual face
    ``tau_hat = dual ∩ tau^perp``.

    ``support`` lies in the relative interior of ``tau_hat`` (so ``tau`` is
    cut out by it), ``dual_support`` in the relative interior of ``tau`` (so
    it cuts out ``tau_hat`` from the dual).
    """

    tau: Cone
    tau_hat: Cone
    support: IntVector
    dual_support: IntVector


def faces(c: Cone) -> list[FacePair]:
    """All faces of ``c`` paired with their dual faces, sorted by dimension."""
    full = frozenset(c.rays)
    seen = {full}
    todo = [full]
    while todo:
        f = todo.pop()
        for a in c.dual_extremal:
            if all(dot(a, r) == 0 for r in f):
                continue
            g = frozenset(r for r in f if dot(a, r) == 0)
            if g not in seen:
                seen.add(g)
                todo.append(g)
    d = c.ambient_dim
    out = []
    for f in seen:
        tau = Cone.from_generators(sorted(f), d)
        hat_gens = [a for a in c.ineqs if all(dot(a, r) == 0 for r in f)]
        tau_hat = Cone.from_generators(hat_gens, d)
        out.append(FacePair(tau, tau_hat,
                            tau_hat.relative_interior_point(),
                            tau.relative_interior_point()))
    out.sort(key=lambda fp: (fp.tau.dim, fp.tau.rays))
    return out


@dataclass(frozen=True)
class DemazureRoot:
    e: IntVector
    distinguished_ray_index: int


def _check_ray(c: Cone, ray_index: int) -> IntVector:
    if c.lineality:
        raise NotStrictlyConvex(f"{c} contains a line")
    if not 0 <= ray_index < len(c.extremal):
        raise BadRay(f"ray index {ray_index} out of range for {len(c.extremal)} rays")
    return c.extremal[ray_index]


def is_demazure_root(c: Cone, e: Sequence[int], ray_index: int) -> bool:
    v = _check_ray(c, ray_index)
    if dot(v, e) != -1:
        return False
    return all(dot(u, e) >= 0 for j, u in enumerate(c.extremal) if j != ray_index)


def _bounded_points(n: int, budget: int):
    """All integer vectors of length n and 1-norm at most budget."""
    if n == 0:
        yield ()
        return
    for x in range(-budget, budget + 1):
        for rest in _bounded_points(n - 1, budget - abs(x)):
            yield (x,) + rest


def _sphere_points(n: int, h: int):
    """All integer vectors of length n and 1-norm exactly h, in lex order."""
    if n == 0:
        if h == 0:
            yield ()
        return
    if n == 1:
        yield from ((-h,), (h,)) if h else ((0,),)
        return
    for x in range(-h, h + 1):
        yield from ((x,) + rest for rest in _sphere_points(n - 1, h - abs(x)))


def demazure_roots_of_height(c: Cone, ray_index: int, height: int) -> list[DemazureRoot]:
    """Demazure roots with the given distinguished ray and 1-norm exactly ``height``."""
    _check_ray(c, ray_index)
    found = sorted(e for e in _sphere_points(c.ambient_dim, height)
                   if is_demazure_root(c, e, ray_index))
    return [DemazureRoot(e, ray_index) for e in found]


def demazure_roots(c: Cone, ray_index: int, max_height: int,
                   lattice_rank: int | None = None) -> list[DemazureRoot]:
    """All Demazure roots with the given distinguished ray and 1-norm at most
    ``max_height``, sorted by (height, lexicographic)."""
    v = _check_ray(c, ray_index)
    d = c.ambient_dim
    if lattice_rank is not None and lattice_rank != d:
        raise ShapeMismatch(f"cone lives in dimension {d}, not {lattice_rank}")
    k = min((i for i in range(d) if v[i]), key=lambda i: abs(v[i]))
    others = [j for j in range(d) if j != k]
    found = []
    for rest in _bounded_points(d - 1, max_height):
        partial = -1 - sum(v[i] * x for i, x in zip(others, rest))
        q, r = divmod(partial, v[k])
        if r:
            continue
        e = rest[:k] + (q,) + rest[k:]
        if norm1(e) <= max_height and is_demazure_root(c, e, ray_index):
            found.append(e)
    found.sort(key=lambda e: (norm1(e), e))
    return [DemazureRoot(e, ray_index) for e in found]


def ray_index(c: Cone, ray: Sequence[int]) -> int:
    """Index of an extremal ray given by any positive multiple of it."""
    p = primitive_vector(as_int_vector(ray))
    try:
        return c.extremal.index(p)
    except ValueError:
        raise BadRay(f"{tuple(ray)} is not an extremal ray of {c}") from None
