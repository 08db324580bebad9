"""Homogeneous derivations on the weight-level model of K[X].

Each weight Lambda of the semigroup carries one formal symbol x^Lambda, and
symbols multiply by adding weights.  For a torus this is exactly the
semigroup algebra K[F]; in general it keeps one vector out of each weight
space S_Lambda, which is all the degree, kernel and nilpotency statements
need.

A homogeneous derivation of degree e is ``x^L -> c <L, l> x^(L + e)`` for a
functional l.  With l the primitive vector of a ray and e a Demazure root
passing the shift checks it is locally nilpotent, of order ``<L, l> + 1`` on
``x^L``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import NotInSemigroup, NotWellDefined
from .exactlat import lp
from .exactlat.vectors import IntVector, add, as_int_vector, clear_denominators, dot, is_zero
from .semigroup import AffineSemigroup


@dataclass(frozen=True)
class GradedElement:
    """A finite combination of weight symbols with rational coefficients."""

    terms: tuple[tuple[IntVector, Fraction], ...]
    semigroup: AffineSemigroup = field(compare=False, repr=False)

    def __post_init__(self):
        for lam, c in self.terms:
            if c == 0:
                raise ValueError("zero coefficients are not stored")
            if not self.semigroup.member(lam):
                raise NotInSemigroup(f"weight {lam} is not in the semigroup")

    def as_dict(self) -> dict[IntVector, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> list[IntVector]:
        return [lam for lam, _ in self.terms]

    def _new(self, coeffs: Mapping[IntVector, Fraction]) -> "GradedElement":
        return element(self.semigroup, coeffs)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = self.as_dict()
        for lam, c in other.terms:
            out[lam] = out.get(lam, 0) + c
        return self._new(out)

    def __neg__(self) -> "GradedElement":
        return self._new({lam: -c for lam, c in self.terms})

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + (-other)

    def __mul__(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            out: dict[IntVector, Fraction] = {}
            for a, ca in self.terms:
                for b, cb in other.terms:
                    lam = add(a, b)
                    out[lam] = out.get(lam, 0) + ca * cb
            return self._new(out)
        k = Fraction(other)
        return self._new({lam: k * c for lam, c in self.terms})

    __rmul__ = __mul__


def element(s: AffineSemigroup, coeffs: Mapping[Sequence[int], object] | Iterable = ()) -> GradedElement:
    """Build an element from a ``{weight: coefficient}`` mapping or pairs."""
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    merged: dict[IntVector, Fraction] = {}
    for lam, c in items:
        lam = as_int_vector(lam)
        merged[lam] = merged.get(lam, Fraction(0)) + Fraction(c)
    terms = tuple(sorted((lam, c) for lam, c in merged.items() if c != 0))
    return GradedElement(terms, s)


def symbol(s: AffineSemigroup, weight: Sequence[int], coeff=1) -> GradedElement:
    return element(s, {tuple(weight): coeff})


def zero(s: AffineSemigroup) -> GradedElement:
    return GradedElement((), s)


@dataclass(frozen=True)
class HomogeneousDerivation:
    """``x^L -> scale * <L, ray> * x^(L + degree)``."""

    degree: IntVector
    ray: IntVector
    scale: Fraction = Fraction(1)


def apply(d: HomogeneousDerivation, x: GradedElement) -> GradedElement:
    out: dict[IntVector, Fraction] = {}
    for lam, c in x.terms:
        k = dot(lam, d.ray)
        if k == 0:
            continue
        mu = add(lam, d.degree)
        if not x.semigroup.member(mu):
            raise NotWellDefined(f"{lam} + {d.degree} = {mu} is not in the semigroup")
        out[mu] = out.get(mu, 0) + c * d.scale * k
    return element(x.semigroup, out)


def power(d: HomogeneousDerivation, x: GradedElement, k: int) -> GradedElement:
    for _ in range(k):
        if x.is_zero:
            break
        x = apply(d, x)
    return x


def nilpotency_order(d: HomogeneousDerivation, s: AffineSemigroup, weight: Sequence[int],
                     max_steps: int = 256) -> int | None:
    """Least k with ``D^k(x^weight) = 0``, or None if not reached within ``max_steps``."""
    return _order(d, symbol(s, weight), max_steps)


def _order(d, x: GradedElement, max_steps: int) -> int | None:
    for k in range(max_steps + 1):
        if x.is_zero:
            return k
        x = apply(d, x)
    return None


def exp_action(d: HomogeneousDerivation, t, x: GradedElement, max_terms: int = 256) -> GradedElement:
    """``sum_i t^i / i! D^i(x)``; the series stops once ``D^i(x)`` vanishes."""
    t = Fraction(t)
    total = zero(x.semigroup)
    term = x
    for i in range(max_terms + 1):
        if term.is_zero:
            return total
        total = total + term * (t ** i / factorial(i))
        term = apply(d, term)
    raise ValueError(f"derivation is not nilpotent on the element within {max_terms} steps")


# -- vertex components ---------------------------------------------------------

def hull_vertices(points: Sequence[Sequence[int]]) -> list[IntVector]:
    """Vertices of the convex hull of finitely many integer points."""
    pts = sorted({as_int_vector(p) for p in points})
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others:
            out.append(p)
            continue
        rows = [[q[i] for q in others] for i in range(len(p))] + [[1] * len(others)]
        if lp.feasible_point(rows, list(p) + [1], len(others)) is None:
            out.append(p)
    return out


def merge_components(components: Sequence[HomogeneousDerivation]) -> dict[IntVector, HomogeneousDerivation]:
    """Sum components sharing a degree: the functionals add up."""
    acc: dict[IntVector, list[Fraction]] = {}
    for c in components:
        vec = acc.setdefault(c.degree, [Fraction(0)] * len(c.ray))
        for i, x in enumerate(c.ray):
            vec[i] += c.scale * x
    out = {}
    for deg, vec in acc.items():
        if all(x == 0 for x in vec):
            continue
        prim = clear_denominators(vec)
        k = next(i for i, x in enumerate(prim) if x)
        out[deg] = HomogeneousDerivation(deg, prim, Fraction(vec[k]) / prim[k])
    return out


def apply_sum(components: Iterable[HomogeneousDerivation], x: GradedElement) -> GradedElement:
    total = zero(x.semigroup)
    for c in components:
        total = total + apply(c, x)
    return total


def vertex_component_check(components: Sequence[HomogeneousDerivation],
                           samples: Sequence[GradedElement], max_steps: int = 64) -> bool:
    """Check that vertex components of a locally nilpotent sum are nilpotent.

    The sum must kill every sample within ``max_steps`` applications (else a
    ValueError: the precondition fails).  Returns True when, for each vertex
    of the hull of the degrees, that homogeneous component alone also kills
    every sample.
    """
    merged = merge_components(components)
    parts = list(merged.values())
    for x in samples:
        y = x
        for _ in range(max_steps):
            if y.is_zero:
                break
            y = apply_sum(parts, y)
        if not y.is_zero:
            raise ValueError("the sum of the components is not nilpotent on the samples")
    for v in hull_vertices(list(merged)):
        comp = merged[v]
        if any(_order(comp, x, max_steps) is None for x in samples):
            return False
    return True
