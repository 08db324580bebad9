"""Affine semigroups in M-coordinates: membership, holes, saturation points.

An :class:`AffineSemigroup` is generated by integer vectors spanning Z^r, so
its saturation is simply ``sigma_dual ∩ Z^r``.  Two facts drive everything
here.

* Membership.  Split the generators into those in the lineality space L of
  ``sigma_dual`` (call them Z) and the rest (P).  The Z-generators span L as a
  cone, so they satisfy a strictly positive relation and ``N Z = Z Z`` is a
  group.  Hence ``F = N P + Z Z``, and the grading ``w`` is strictly positive
  on P and zero on Z.  Deciding ``v in F`` is a finite search that peels
  P-generators off ``v`` and ends with a lattice test.  The same search with
  the functional cutting out a face ``tau_hat`` decides ``v in F + Z F_tau``,
  which is what almost-saturation reduces to.

* Finiteness.  Every point of the saturation is ``pi + f`` with ``f in F``
  and ``pi`` in the half-open parallelepiped of at most r linearly
  independent generators, so module generators have degree below the sum of
  the r largest generator degrees.  A module-generator search that reaches
  that bound is complete.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, lcm
from typing import Iterable, Sequence, Union

from .cones import Cone, FacePair, dual_cone
from .errors import EmptyInput, NotInSemigroup, ShapeMismatch
from .exactlat import lp
from .exactlat.feasibility import (
    CongruenceCertificate,
    FarkasCertificate,
    congruence_certificate,
    farkas_certificate,
)
from .exactlat.lattice import (
    coordinates_in_lattice,
    extend_to_unimodular,
    hermite_basis,
    integer_solve,
    inverse_unimodular,
)
from .exactlat.vectors import IntVector, add, as_int_vector, dot, is_zero, norm1, sub


_OPEN = object()


class _ShiftedMembership:
    """Decides ``v in N P + Z Z`` where ``phi`` is positive on P and zero on Z.

    ``prune`` are inequalities every partial remainder must satisfy (the
    dual of the face, which contains ``N P + Z Z``).  Results are memoized;
    the memo only ever gains entries whose value is a pure function of the
    key, so concurrent use cannot change an answer.
    """

    def __init__(self, phi: IntVector, p_gens: Sequence[IntVector], z_gens: Sequence[IntVector],
                 prune: Sequence[IntVector], dim: int):
        self.phi = phi
        self.p_gens = list(p_gens)
        self.p_deg = [dot(phi, g) for g in self.p_gens]
        self.z_gens = list(z_gens)
        self.prune = list(prune)
        self.dim = dim
        self.z_lattice = hermite_basis(self.z_gens) if self.z_gens else None
        self._memo: dict[IntVector, int | None] = {}

    def _in_z(self, u: IntVector) -> bool:
        if self.z_lattice is None:
            return is_zero(u)
        return coordinates_in_lattice(u, self.z_lattice) is not None

    def _admissible(self, u: IntVector) -> bool:
        return all(dot(a, u) >= 0 for a in self.prune)

    def contains(self, v: IntVector) -> bool:
        return self._step(v) is not None

    def _base(self, u: IntVector):
        d = dot(self.phi, u)
        if d < 0 or not self._admissible(u):
            return None
        if d == 0:
            return -1 if self._in_z(u) else None
        return _OPEN

    def _step(self, v: IntVector):
        """Index of a P-generator to peel next, -1 when ``v`` is in Z Z, or None."""
        memo = self._memo
        if v in memo:
            return memo[v]
        res = self._base(v)
        if res is not _OPEN:
            memo[v] = res
            return res
        # Depth-first search with explicit frames [point, next generator index].
        stack = [[v, 0]]
        while stack:
            frame = stack[-1]
            u, i = frame
            if i == len(self.p_gens):
                memo[u] = None
                stack.pop()
                continue
            frame[1] = i + 1
            if self.p_deg[i] > dot(self.phi, u):
                continue
            nxt = sub(u, self.p_gens[i])
            if nxt in memo:
                res = memo[nxt]
            else:
                res = self._base(nxt)
                if res is _OPEN:
                    stack.append([nxt, 0])
                    continue
                memo[nxt] = res
            if res is not None:
                # Success propagates to every ancestor along the current path.
                while stack:
                    point, nexti = stack.pop()
                    memo[point] = nexti - 1
        return memo[v]

    def decompose(self, v: IntVector) -> tuple[tuple[int, ...], IntVector] | None:
        """Multiplicities of P-generators and the remaining point of Z Z."""
        if self._step(v) is None:
            return None
        counts = [0] * len(self.p_gens)
        u = v
        while True:
            i = self._step(u)
            if i == -1:
                return tuple(counts), u
            counts[i] += 1
            u = sub(u, self.p_gens[i])

    def z_coefficients(self, u: IntVector) -> IntVector:
        """Integer coefficients expressing ``u`` in the Z-generators."""
        if not self.z_gens:
            return ()
        cols = [list(r) for r in zip(*self.z_gens)]
        x, _ = integer_solve(cols, list(u), len(self.z_gens))
        return x


@dataclass(frozen=True)
class ModuleGens:
    """Generators of the saturation as a module over the semigroup.

    ``gens[0]`` is always the origin.  Every saturation point of degree at
    most ``certified_up_to`` lies in ``m + F`` for some listed ``m``;
    ``complete`` records that the bound reaches the a priori degree bound,
    so the cover holds for every saturation point.
    """

    gens: tuple[IntVector, ...]
    certified_up_to: int
    complete: bool


class AffineSemigroup:
    """The semigroup generated by integer vectors spanning Z^r."""

    def __init__(self, gens: Iterable[Sequence[int]], lattice_rank: int | None = None):
        gens = [as_int_vector(g) for g in gens]
        if not gens:
            raise EmptyInput("a semigroup needs at least one generator")
        r = lattice_rank if lattice_rank is not None else len(gens[0])
        if any(len(g) != r for g in gens):
            raise ShapeMismatch("generators of inconsistent length")
        nonzero = [g for g in gens if not is_zero(g)]
        if r and (not nonzero or hermite_basis(nonzero).basis_rows != hermite_basis(
                [tuple(int(i == j) for j in range(r)) for i in range(r)]).basis_rows):
            raise ShapeMismatch("generators must span the full integer lattice Z^r")
        self.gens: tuple[IntVector, ...] = tuple(gens)
        self.lattice_rank = r
        self.cone: Cone = Cone.from_generators(nonzero, r) if nonzero else Cone.from_generators([], r)
        sigma = dual_cone(self.cone)
        self.sigma = sigma
        self.grading: IntVector = tuple(sum(v[i] for v in sigma.extremal) for i in range(r))
        self._nonzero = nonzero
        lin = list(self.cone.lineality)
        self._ell = len(lin)
        if lin:
            u = [list(row) for row in extend_to_unimodular(lin, r)]
            u[:len(lin)] = [list(b) for b in lin]
            self._u = u
            self._u_inv = inverse_unimodular(u)
        else:
            self._u = self._u_inv = None
        p_gens = [g for g in nonzero if dot(self.grading, g) > 0]
        z_gens = [g for g in nonzero if dot(self.grading, g) == 0]
        self._membership = _ShiftedMembership(self.grading, p_gens, z_gens, self.cone.ineqs, r)
        self._face_membership: dict[IntVector, _ShiftedMembership] = {}
        self._points_cache: dict[int, list[IntVector]] = {}
        self._module_cache: dict[int, ModuleGens] = {}
        self._positive_relation = _positive_relation(z_gens) if z_gens else ()

    def __repr__(self) -> str:
        return f"AffineSemigroup({list(self.gens)})"

    # -- degrees -----------------------------------------------------------
    def l_coordinates(self, v: Sequence[int]) -> IntVector:
        """Coordinates of ``v`` along the integer basis of the lineality space."""
        if not self._ell:
            return ()
        y = [sum(v[i] * self._u_inv[i][j] for i in range(self.lattice_rank))
             for j in range(self.lattice_rank)]
        return tuple(y[:self._ell])

    def degree(self, v: Sequence[int]) -> int:
        """Enumeration degree: ``<w, v>`` plus the 1-norm of the lineality part.

        When ``sigma_dual`` is pointed this is the grading itself.
        """
        return dot(self.grading, v) + norm1(self.l_coordinates(v))

    def max_generator_degree(self) -> int:
        return max((self.degree(g) for g in self._nonzero), default=0)

    def completeness_degree(self) -> int:
        """Sum of the r largest generator degrees: module generators lie below it."""
        degs = sorted((self.degree(g) for g in self._nonzero), reverse=True)
        return sum(degs[:self.lattice_rank])

    # -- enumeration -------------------------------------------------------
    def saturation_points(self, degree_bound: int) -> list[IntVector]:
        """All points of the saturation with degree at most the bound,
        sorted by (degree, lexicographic)."""
        if degree_bound < 0:
            return []
        if degree_bound in self._points_cache:
            return self._points_cache[degree_bound]
        r, ell = self.lattice_rank, self._ell
        d = degree_bound
        if ell:
            quot_rows = [tuple(row) for row in self._u[ell:]]
            lin_rows = [tuple(row) for row in self._u[:ell]]
        else:
            quot_rows = [tuple(int(i == j) for j in range(r)) for i in range(r)]
            lin_rows = []

        def quotient_coords(v):
            if not ell:
                return tuple(v)
            y = [sum(v[i] * self._u_inv[i][j] for i in range(r)) for j in range(r)]
            return tuple(y[ell:])

        rays = [(quotient_coords(e), dot(self.grading, e)) for e in self.cone.extremal]
        ranges = []
        for k in range(r - ell):
            lo = min([Fraction(0)] + [Fraction(d * q[k], wr) for q, wr in rays])
            hi = max([Fraction(0)] + [Fraction(d * q[k], wr) for q, wr in rays])
            ranges.append(range(ceil(lo), floor(hi) + 1))
        out = []
        for q in product(*ranges):
            base = tuple(sum(q[k] * quot_rows[k][i] for k in range(r - ell)) for i in range(r))
            wd = dot(self.grading, base)
            if wd > d or not self.cone.contains(base):
                continue
            for y in _l1_ball(ell, d - wd):
                v = tuple(base[i] + sum(y[k] * lin_rows[k][i] for k in range(ell)) for i in range(r))
                out.append(v)
        out.sort(key=lambda v: (self.degree(v), v))
        self._points_cache[degree_bound] = out
        return out

    # -- membership --------------------------------------------------------
    def in_saturation(self, v: Sequence[int]) -> bool:
        return len(v) == self.lattice_rank and self.cone.contains(v)

    def member(self, v: Sequence[int]) -> bool:
        v = as_int_vector(v)
        if len(v) != self.lattice_rank:
            raise ShapeMismatch(f"vector of length {len(v)} in a rank {self.lattice_rank} semigroup")
        return self._membership.contains(v)

    def member_certificate(self, v: Sequence[int]) -> IntVector | None:
        """Nonnegative multiplicities ``c`` with ``sum c_i gens_i = v``, or None."""
        v = as_int_vector(v)
        dec = self._membership.decompose(v)
        if dec is None:
            return None
        p_counts, rest = dec
        coeff = {g: 0 for g in self.gens}
        for g, c in zip(self._membership.p_gens, p_counts):
            coeff[g] += c
        if self._membership.z_gens:
            x = list(self._membership.z_coefficients(rest))
            rel = self._positive_relation
            k = max([0] + [ceil(Fraction(-xi, ri)) for xi, ri in zip(x, rel) if xi < 0])
            for g, xi, ri in zip(self._membership.z_gens, x, rel):
                coeff[g] += xi + k * ri
        # Attribute multiplicities to the first occurrence of each generator.
        seen = set()
        out = []
        for g in self.gens:
            if g in seen or is_zero(g):
                out.append(0)
            else:
                seen.add(g)
                out.append(coeff[g])
        return tuple(out)

    def face_membership(self, face: FacePair) -> _ShiftedMembership:
        """Decider for ``v in F + Z (F ∩ tau_hat)``."""
        phi = face.dual_support
        m = self._face_membership.get(phi)
        if m is None:
            p_gens = [g for g in self._nonzero if dot(phi, g) > 0]
            z_gens = [g for g in self._nonzero if dot(phi, g) == 0]
            m = _ShiftedMembership(phi, p_gens, z_gens, face.tau.rays, self.lattice_rank)
            self._face_membership[phi] = m
        return m


def _l1_ball(n: int, budget: int):
    if n == 0:
        yield ()
        return
    for x in range(-budget, budget + 1):
        for rest in _l1_ball(n - 1, budget - abs(x)):
            yield (x,) + rest


def _positive_relation(z_gens: Sequence[IntVector]) -> IntVector:
    """Integer coefficients, all at least 1, of a relation among ``z_gens``."""
    n = len(z_gens)
    rows = [list(r) for r in zip(*z_gens)]
    rhs = [-sum(r) for r in rows]
    res = lp.minimize([0] * n, rows, rhs)
    if res.status != "optimal":
        raise AssertionError("generators in the lineality space admit no positive relation")
    a = [x + 1 for x in res.x]
    den = lcm(*(Fraction(x).denominator for x in a))
    return tuple(int(x * den) for x in a)


# -- module-level operations (thin wrappers used throughout) ----------------

def member(s: AffineSemigroup, v: Sequence[int]) -> bool:
    return s.member(v)


def saturation_holes(s: AffineSemigroup, degree_bound: int) -> list[IntVector]:
    return [v for v in s.saturation_points(degree_bound) if not s.member(v)]


def hilbert_basis(s: AffineSemigroup, degree_bound: int) -> list[IntVector]:
    """Irreducible elements of the saturation up to the degree bound.

    When ``sigma_dual`` contains a line the saturation has units; the result
    is then a basis of the unit group (with signs) followed by the
    irreducibles of the complement spanned by the remaining coordinates.
    """
    pts = s.saturation_points(degree_bound)
    lin = list(s.cone.lineality)
    if lin:
        pts = [v for v in pts if not any(s.l_coordinates(v))]
    found: list[IntVector] = []
    for v in pts:
        if is_zero(v):
            continue
        if any(h != v and s.in_saturation(sub(v, h)) for h in found):
            continue
        found.append(v)
    units = sorted(set(lin) | {tuple(-x for x in b) for b in lin})
    return sorted(units + found, key=lambda v: (s.degree(v), v))


def module_generators(s: AffineSemigroup, degree_bound: int | None = None) -> ModuleGens:
    """Minimal generators of the saturation as an F-module, by degree.

    Defaults to the a priori degree bound, in which case the result is
    complete.
    """
    bound = s.completeness_degree() if degree_bound is None else degree_bound
    if bound < 0:
        raise ValueError("degree bound must be nonnegative")
    cached = s._module_cache.get(bound)
    if cached is not None:
        return cached
    gens: list[IntVector] = []
    for v in s.saturation_points(bound):
        if not any(s.member(sub(v, m)) for m in gens):
            gens.append(v)
    # Enumeration degree is not additive along the lineality; drop any
    # generator that a later one covers.
    pruned = [m for i, m in enumerate(gens)
              if not any(j != i and s.member(sub(m, o)) for j, o in enumerate(gens))]
    pruned.sort(key=lambda v: (s.degree(v), v))
    result = ModuleGens(tuple(pruned), bound, bound >= s.completeness_degree() - 1)
    s._module_cache[bound] = result
    return result


def is_saturation_point(s: AffineSemigroup, mg: ModuleGens, p: Sequence[int]) -> bool:
    p = as_int_vector(p)
    if not s.member(p):
        raise NotInSemigroup(f"{p} is not in the semigroup")
    return all(s.member(add(p, m)) for m in mg.gens)


# -- saturation status of a face ---------------------------------------------

@dataclass(frozen=True)
class AlmostSaturated:
    witness: IntVector


@dataclass(frozen=True)
class FaceObstruction:
    """Proof that ``p + m`` misses the semigroup for every ``p`` in the face.

    ``kind`` is "lp" or "congruence" when the integer system
    ``G d - G c = m, <G c, phi> = 0, c, d >= 0`` has a replayable
    rational certificate (``phi`` cuts out the face), and "exhaustive" when
    the finitely many ways of writing ``m`` modulo the face lattice were all
    checked.  Each kind replays independently of the search that found it.
    """

    module_generator: IntVector
    kind: str
    certificate: Union[FarkasCertificate, CongruenceCertificate, None] = None

    def replay(self, gens: Sequence[IntVector], phi: Sequence[int]) -> bool:
        """Check the obstruction against generators and the face functional."""
        if self.kind in ("lp", "congruence"):
            a, b = _face_system(gens, phi, self.module_generator)
            return self.certificate.replay(a, b)
        return not _exhaustive_shift_search(gens, phi, self.module_generator)


@dataclass(frozen=True)
class NowhereSaturatedCertified:
    obstruction: FaceObstruction


@dataclass(frozen=True)
class UndecidedUpToBound:
    bound: int


SaturationStatus = Union[AlmostSaturated, NowhereSaturatedCertified, UndecidedUpToBound]


def _face_system(gens: Sequence[IntVector], phi: Sequence[int], m: IntVector):
    """Rows of ``[-G | G] (c; d) = m`` and ``sum c_i <g_i, phi> = 0``."""
    gens = [g for g in gens if not is_zero(g)]
    n = len(gens)
    rows = []
    for k in range(len(m)):
        rows.append([-g[k] for g in gens] + [g[k] for g in gens])
    rows.append([dot(g, phi) for g in gens] + [0] * n)
    return rows, list(m) + [0]


def _exhaustive_shift_search(gens: Sequence[IntVector], phi: Sequence[int], m: IntVector) -> bool:
    """Plain enumeration: is ``m`` in ``F + Z (face generators)``?

    Every representation uses off-face generators whose phi-degrees add up
    to ``<m, phi>``; try each such multiset and test the remainder against
    the lattice spanned by the face generators.
    """
    gens = [g for g in gens if not is_zero(g)]
    off = [g for g in gens if dot(phi, g) > 0]
    on = [g for g in gens if dot(phi, g) == 0]
    target = dot(phi, m)
    if target < 0:
        return False
    lattice = hermite_basis(on) if on else None

    def rec(i: int, rem: int, u: IntVector) -> bool:
        if rem == 0:
            return is_zero(u) if lattice is None else coordinates_in_lattice(u, lattice) is not None
        if i == len(off):
            return False
        g = off[i]
        dg = dot(phi, g)
        k = 0
        while k * dg <= rem:
            if rec(i + 1, rem - k * dg, tuple(x - k * y for x, y in zip(u, g))):
                return True
            k += 1
        return False

    return rec(0, target, tuple(m))


def _obstruction(s: AffineSemigroup, phi: IntVector, m: IntVector) -> FaceObstruction:
    a, b = _face_system(s.gens, phi, m)
    n = len(a[0])
    if lp.feasible_point(a, b, n) is None:
        return FaceObstruction(m, "lp", farkas_certificate(a, b, n))
    cert = congruence_certificate(a, b, n)
    if cert is not None:
        return FaceObstruction(m, "congruence", cert)
    return FaceObstruction(m, "exhaustive")


def face_saturation_status(s: AffineSemigroup, face: FacePair, mg: ModuleGens,
                           search_bound: int | None = None) -> SaturationStatus:
    """Whether ``tau_hat`` contains a saturation point.

    A point ``p`` of ``F ∩ tau_hat`` works for a module generator ``m``
    exactly when ``m`` lies in ``F + Z(F ∩ tau_hat)``; the coefficients of a
    representation supply such a ``p``, and summing over all module
    generators gives a saturation point.  With complete module generators
    this is a decision; the witness is then improved to one of least degree
    within ``search_bound``.
    """
    phi = face.dual_support
    dec = s.face_membership(face)
    p = (0,) * s.lattice_rank
    for m in mg.gens:
        rep = dec.decompose(m)
        if rep is None:
            return NowhereSaturatedCertified(_obstruction(s, phi, m))
        _, rest = rep
        coeffs = dec.z_coefficients(rest)
        for g, c in zip(dec.z_gens, coeffs):
            if c < 0:
                p = tuple(x - c * y for x, y in zip(p, g))
    if not mg.complete:
        return UndecidedUpToBound(mg.certified_up_to)
    bound = s.degree(p) if search_bound is None else min(search_bound, s.degree(p))
    for q in s.saturation_points(bound):
        if dot(phi, q) == 0 and s.member(q) and is_saturation_point(s, mg, q):
            return AlmostSaturated(q)
    return AlmostSaturated(p)
