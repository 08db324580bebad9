"""Combinatorial dictionary of an affine horospherical variety X(F).

Input is a group G = G' x (K^*)^s and dominant weights generating F.  All
cones are re-expressed in coordinates of the lattice M = Z F, where sigma is
strictly convex and sigma_dual full-dimensional.  From there:

* faces of sigma give the G-orbits, with dimensions from
  ``dim tau_hat + Delta(F ∩ tau_hat)``;
* a ray of sigma gives a codimension-one orbit exactly when it is not a ray
  of theta;
* such a ray is significant when its dual facet is almost saturated;
* X is flexible exactly when theta together with the significant rays spans
  N_Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil
from typing import Sequence, Union

from .cones import (
    Cone,
    DemazureRoot,
    FacePair,
    demazure_roots_of_height,
    dual_cone,
    faces,
    is_demazure_root,
    ray_index as _ray_index,
)
from .errors import BadRay, EmptyInput, Inconsistent, NoLndExists, NotAWeight
from .exactlat.lattice import LatticeBasis, coordinates_in_lattice, hermite_basis, integer_solve
from .exactlat.vectors import IntVector, add, as_int_vector, dot, is_zero
from .rootsystem import GroupSpec, check_dominant, delta, support_of_semigroup
from .semigroup import (
    AffineSemigroup,
    AlmostSaturated,
    ModuleGens,
    NowhereSaturatedCertified,
    SaturationStatus,
    UndecidedUpToBound,
    face_saturation_status,
    module_generators,
)

FLEXIBLE = "FLEXIBLE"
NOT_FLEXIBLE = "NOT_FLEXIBLE"
UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Bounds:
    """Search limits.  ``None`` means "use the default for this semigroup"."""

    degree: int | None = None
    module_degree: int | None = None
    search_degree: int | None = None
    root_height: int | None = None

    def resolve(self, s: AffineSemigroup) -> "Bounds":
        base = 8 * max(1, s.max_generator_degree())
        return Bounds(
            degree=base if self.degree is None else self.degree,
            module_degree=s.completeness_degree() if self.module_degree is None else self.module_degree,
            search_degree=base if self.search_degree is None else self.search_degree,
            root_height=12 if self.root_height is None else self.root_height,
        )

    def as_dict(self) -> dict:
        return {"degree": self.degree, "module_degree": self.module_degree,
                "search_degree": self.search_degree, "root_height": self.root_height}


@dataclass(frozen=True)
class HoroVariety:
    group: GroupSpec
    ambient_gens: tuple[IntVector, ...]
    M: LatticeBasis
    gens_M: tuple[IntVector, ...]
    sigma_dual: Cone
    sigma: Cone
    theta_dual: Cone
    theta: Cone
    semigroup: AffineSemigroup = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return self.M.rank


def build(group: GroupSpec, ambient_gens: Sequence[Sequence[int]]) -> HoroVariety:
    gens = [as_int_vector(g) for g in ambient_gens]
    if not gens:
        raise EmptyInput("at least one generator is required")
    check_dominant(group, gens)
    d = group.ambient_dim
    nonzero = [g for g in gens if not is_zero(g)]
    if nonzero:
        M = hermite_basis(nonzero)
    else:
        M = LatticeBasis(d, ())
    r = M.rank
    gens_M = tuple(coordinates_in_lattice(g, M) for g in gens)
    s = AffineSemigroup(gens_M, r)
    # theta_dual: the dominant chamber pulled back along x -> x.B.
    chamber = [tuple(M.basis_rows[k][i] for k in range(r)) for i in range(group.semisimple_rank)]
    theta_dual = Cone.from_inequalities(chamber, r)
    theta = dual_cone(theta_dual)
    h = HoroVariety(group, tuple(gens), M, gens_M, s.cone, s.sigma, theta_dual, theta, s)
    if not theta_dual.contains_cone(h.sigma_dual):
        raise Inconsistent("sigma_dual is not contained in theta_dual")
    return h


def to_ambient(h: HoroVariety, v: Sequence[int]) -> IntVector:
    return h.M.to_ambient(v)


# -- dimensions and orbits ---------------------------------------------------

@lru_cache(maxsize=256)
def _faces(sigma: Cone) -> tuple[FacePair, ...]:
    return tuple(faces(sigma))


def _face_generators(h: HoroVariety, face: FacePair) -> list[int]:
    """Indices of generators lying on ``tau_hat``."""
    return [i for i, g in enumerate(h.gens_M) if dot(g, face.dual_support) == 0]


def _delta_of(h: HoroVariety, gen_indices: Sequence[int]) -> int:
    support = support_of_semigroup(h.group, [h.ambient_gens[i] for i in gen_indices])
    return delta(h.group, support)


def dimension(h: HoroVariety) -> int:
    return h.sigma_dual.dim + _delta_of(h, range(len(h.gens_M)))


@dataclass(frozen=True)
class OrbitInfo:
    face: FacePair
    orbit_dim: int
    codim: int
    face_generators: tuple[IntVector, ...]
    closure_contains: tuple[int, ...] = ()
    regularity: str | None = None  # "Regular" | "NotRegular" | "Undecided" for codim 1


def orbit_lattice(h: HoroVariety, bounds: Bounds | None = None,
                  with_regularity: bool = False) -> list[OrbitInfo]:
    """One entry per face of sigma, sorted by face dimension then rays.

    ``closure_contains`` lists the orbits in the closure of this one: the
    orbit of ``tau_1`` lies in the closure of the orbit of ``tau_2`` exactly
    when ``tau_2`` is a face of ``tau_1``.
    """
    dim_x = dimension(h)
    fs = _faces(h.sigma)
    statuses = {}
    if with_regularity:
        for rs in significant_rays(h, bounds):
            statuses[rs.ray] = rs.status
    out = []
    for fp in fs:
        idx = _face_generators(h, fp)
        odim = fp.tau_hat.dim + _delta_of(h, idx)
        closure = tuple(k for k, other in enumerate(fs) if other.tau.contains_cone(fp.tau))
        reg = None
        if dim_x - odim == 1 and fp.tau.extremal and fp.tau.extremal[0] in statuses:
            reg = _regularity(statuses[fp.tau.extremal[0]])
        out.append(OrbitInfo(fp, odim, dim_x - odim,
                             tuple(h.gens_M[i] for i in idx), closure, reg))
    return out


def _regularity(status: SaturationStatus) -> str:
    if isinstance(status, AlmostSaturated):
        return "Regular"
    if isinstance(status, NowhereSaturatedCertified):
        return "NotRegular"
    return "Undecided"


def _ray_face(h: HoroVariety, ray: IntVector) -> FacePair:
    for fp in _faces(h.sigma):
        if fp.tau.extremal == (ray,):
            return fp
    raise BadRay(f"{ray} is not an extremal ray of sigma")


def resolve_ray(h: HoroVariety, ray: Union[int, Sequence[int]]) -> IntVector:
    """Extremal ray of sigma given by its index or by a vector along it."""
    if isinstance(ray, int):
        if not 0 <= ray < len(h.sigma.extremal):
            raise BadRay(f"ray index {ray} out of range")
        return h.sigma.extremal[ray]
    return h.sigma.extremal[_ray_index(h.sigma, ray)]


def codim_one_rays(h: HoroVariety) -> list[IntVector]:
    """Rays of sigma that are not rays of theta, checked against orbit dimensions."""
    by_theta = [v for v in h.sigma.extremal if v not in h.theta.extremal]
    dim_x = dimension(h)
    by_dim = []
    for v in h.sigma.extremal:
        fp = _ray_face(h, v)
        if dim_x - (fp.tau_hat.dim + _delta_of(h, _face_generators(h, fp))) == 1:
            by_dim.append(v)
    if by_theta != by_dim:
        raise Inconsistent(f"codimension-one rays disagree: {by_theta} vs {by_dim}")
    return by_theta


# -- significance, regularity cone, verdict ----------------------------------

@dataclass(frozen=True)
class RayStatus:
    ray: IntVector
    codim1: bool
    status: SaturationStatus | None

    @property
    def significant(self) -> bool:
        return self.codim1 and isinstance(self.status, AlmostSaturated)

    @property
    def undecided(self) -> bool:
        return self.codim1 and isinstance(self.status, UndecidedUpToBound)


def _module_gens(h: HoroVariety, b: Bounds) -> ModuleGens:
    return module_generators(h.semigroup, b.module_degree)


def significant_rays(h: HoroVariety, bounds: Bounds | None = None) -> list[RayStatus]:
    """Saturation status of the dual facet of every codimension-one ray."""
    b = (bounds or Bounds()).resolve(h.semigroup)
    mg = _module_gens(h, b)
    out = []
    for v in codim_one_rays(h):
        st = face_saturation_status(h.semigroup, _ray_face(h, v), mg, b.search_degree)
        out.append(RayStatus(v, True, st))
    return out


def ray_statuses(h: HoroVariety, bounds: Bounds | None = None) -> list[RayStatus]:
    sig = {rs.ray: rs for rs in significant_rays(h, bounds)}
    return [sig.get(v, RayStatus(v, False, None)) for v in h.sigma.extremal]


def regularity_cone(h: HoroVariety, bounds: Bounds | None = None,
                    statuses: Sequence[RayStatus] | None = None) -> tuple[Cone, Cone]:
    if statuses is None:
        statuses = significant_rays(h, bounds)
    base = list(h.theta.rays)
    lo = base + [rs.ray for rs in statuses if rs.significant]
    hi = lo + [rs.ray for rs in statuses if rs.undecided]
    r = h.rank
    return Cone.from_generators(lo, r), Cone.from_generators(hi, r)


@dataclass(frozen=True)
class FlexReport:
    verdict: str
    dim_X: int
    gamma_min: Cone
    gamma_max: Cone
    ray_statuses: tuple[RayStatus, ...]
    hyperplane_normal: IntVector | None
    module_gens: ModuleGens
    bounds: Bounds
    lnd_roots: tuple["LndRoot", ...] = ()


def flexibility(h: HoroVariety, bounds: Bounds | None = None, with_roots: bool = False) -> FlexReport:
    b = (bounds or Bounds()).resolve(h.semigroup)
    statuses = ray_statuses(h, b)
    gmin, gmax = regularity_cone(h, b, [rs for rs in statuses if rs.codim1])
    normal = None
    if gmin.is_full_dimensional:
        verdict = FLEXIBLE
    elif not gmax.is_full_dimensional:
        verdict = NOT_FLEXIBLE
        normal = gmax.dual_lineality[0]
    else:
        verdict = UNDECIDED
    roots = ()
    if with_roots:
        roots = tuple(find_lnd_root(h, rs.ray, b) for rs in statuses if rs.significant)
    return FlexReport(verdict, dimension(h), gmin, gmax, tuple(statuses), normal,
                      _module_gens(h, b), b, roots)


def regular_locus_weight_cone(h: HoroVariety, gamma: Cone) -> Cone:
    """Weights of regular functions on the regular locus: gamma dual."""
    return dual_cone(gamma)


def has_nonconstant_invertible(h: HoroVariety, gamma: Cone) -> bool:
    return regular_locus_weight_cone(h, gamma).lineality_dim > 0


def vanishing_order(h: HoroVariety, weight: Sequence[int], ray: Union[int, Sequence[int]]) -> int:
    """Order of vanishing along the divisor of ``ray`` of a function of weight ``weight``
    (given in M-coordinates)."""
    lam = as_int_vector(weight)
    if len(lam) != h.rank or not h.theta_dual.contains(lam):
        raise NotAWeight(f"{lam} is not a weight in theta_dual ∩ M")
    return dot(lam, resolve_ray(h, ray))


# -- homogeneous LNDs --------------------------------------------------------

@dataclass(frozen=True)
class LndRoot:
    root: DemazureRoot
    ray: IntVector
    in_theta_dual: bool
    shift_checks: tuple[tuple[IntVector, IntVector, bool], ...]  # (g, g + e, member)
    method: str  # "search" or "constructed"

    @property
    def e(self) -> IntVector:
        return self.root.e


@dataclass(frozen=True)
class LndNotFound:
    bound: int


def ideal_generators(h: HoroVariety, ray: Union[int, Sequence[int]]) -> list[IntVector]:
    """Generators of ``{L in F : <L, v> > 0}`` as an F-module.

    Any element of this ideal uses some generator off the facet, so the
    off-facet generators suffice; redundant ones are dropped.
    """
    v = resolve_ray(h, ray)
    s = h.semigroup
    off = sorted({g for g in h.gens_M if dot(g, v) > 0})
    return [g for g in off if not any(o != g and s.member(tuple(x - y for x, y in zip(g, o)))
                                      for o in off)]


def _check_root(h: HoroVariety, v: IntVector, e: IntVector, ideal: Sequence[IntVector]):
    checks = tuple((g, add(g, e), h.semigroup.member(add(g, e))) for g in ideal)
    return checks, all(ok for _, _, ok in checks)


def _some_demazure_root(h: HoroVariety, v: IntVector, s_vec: IntVector) -> IntVector:
    """A Demazure root for ``v``: any e with <v, e> = -1, pushed into the other
    half-spaces along ``s_vec``, which is positive on every other ray."""
    x, _ = integer_solve([list(v)], [-1], h.rank)
    e = tuple(x)
    k = 0
    for u in h.sigma.extremal:
        if u != v and dot(u, e) < 0:
            k = max(k, ceil(-dot(u, e) / dot(u, s_vec)))
    return tuple(a + k * b for a, b in zip(e, s_vec))


def find_lnd_root(h: HoroVariety, ray: Union[int, Sequence[int]],
                  bounds: Bounds | None = None) -> Union[LndRoot, LndNotFound]:
    """A Demazure root e in theta_dual with ``g + e`` in F for every ideal generator.

    Roots are tried by increasing 1-norm up to ``root_height``.  Past that,
    one is built as ``e' + p + k s``: a Demazure root ``e'``, a saturation
    point ``p`` on the facet, and enough of an interior facet point ``s`` to
    enter theta_dual.
    """
    b = (bounds or Bounds()).resolve(h.semigroup)
    v = resolve_ray(h, ray)
    if v not in codim_one_rays(h):
        raise BadRay(f"{v} does not give a codimension-one orbit")
    face = _ray_face(h, v)
    st = face_saturation_status(h.semigroup, face, _module_gens(h, b), b.search_degree)
    if isinstance(st, NowhereSaturatedCertified):
        raise NoLndExists(f"the facet dual to {v} is nowhere saturated")
    idx = h.sigma.extremal.index(v)
    ideal = ideal_generators(h, v)
    for height in range(1, b.root_height + 1):
        for root in demazure_roots_of_height(h.sigma, idx, height):
            if not h.theta_dual.contains(root.e):
                continue
            checks, ok = _check_root(h, v, root.e, ideal)
            if ok:
                return LndRoot(root, v, True, checks, "search")
    if isinstance(st, UndecidedUpToBound):
        return LndNotFound(b.root_height)
    s_vec = face.support
    e = add(_some_demazure_root(h, v, s_vec), st.witness)
    k = 0
    for a in h.theta_dual.ineqs:
        if dot(a, e) < 0:
            k = max(k, ceil(-dot(a, e) / dot(a, s_vec)))
    e = tuple(x + k * y for x, y in zip(e, s_vec))
    checks, ok = _check_root(h, v, e, ideal)
    if not ok or not is_demazure_root(h.sigma, e, idx) or not h.theta_dual.contains(e):
        raise Inconsistent(f"constructed root {e} failed its checks")
    return LndRoot(DemazureRoot(e, idx), v, True, checks, "constructed")
