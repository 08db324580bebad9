import pytest

from horoflex.cones import cone, is_demazure_root
from horoflex.errors import BadRay, EmptyInput, NoLndExists, NotAWeight, NotDominant
from horoflex.horospherical import (
    FLEXIBLE,
    NOT_FLEXIBLE,
    UNDECIDED,
    Bounds,
    LndNotFound,
    LndRoot,
    build,
    codim_one_rays,
    dimension,
    find_lnd_root,
    flexibility,
    has_nonconstant_invertible,
    ideal_generators,
    orbit_lattice,
    ray_statuses,
    regular_locus_weight_cone,
    resolve_ray,
    vanishing_order,
)
from horoflex.rootsystem import GroupSpec
from horoflex.semigroup import AlmostSaturated

A1T1 = GroupSpec((("A", 1),), 1)
EX1 = [(2, 0), (1, 1), (0, 1)]
EX2 = [(2, 0), (1, 1), (1, 2)]


def test_build_example_one():
    h = build(A1T1, EX1)
    assert h.rank == 2 and h.gens_M == tuple(EX1)
    assert h.theta_dual == cone((1, 0), (0, 1), (0, -1))
    assert h.theta == cone((1, 0), ambient_dim=2)
    assert dimension(h) == 3
    assert codim_one_rays(h) == [(0, 1)]


def test_build_changes_lattice():
    # generators spanning an index-2 sublattice are rewritten in its basis
    h = build(A1T1, [(2, 0), (0, 2), (2, 2)])
    assert h.rank == 2 and h.M.basis_rows == ((2, 0), (0, 2))
    assert set(h.gens_M) == {(1, 0), (0, 1), (1, 1)}
    assert flexibility(h).verdict == FLEXIBLE


def test_build_errors():
    with pytest.raises(NotDominant):
        build(A1T1, [(-1, 0)])
    with pytest.raises(EmptyInput):
        build(A1T1, [])


def test_orbits_example_one():
    h = build(A1T1, EX1)
    orbits = orbit_lattice(h, with_regularity=True)
    by_rays = {o.face.tau.rays: o for o in orbits}
    assert by_rays[()].codim == 0
    assert by_rays[((1, 0),)].codim == 2
    assert by_rays[((0, 1),)].codim == 1 and by_rays[((0, 1),)].regularity == "NotRegular"
    fixed = by_rays[((0, 1), (1, 0))]
    assert fixed.orbit_dim == 0
    # every orbit closure contains the fixed point, and the open orbit's closure is everything
    idx = orbits.index(fixed)
    assert all(idx in o.closure_contains for o in orbits)
    assert set(by_rays[()].closure_contains) == set(range(len(orbits)))


def test_flexibility_example_one():
    rep = flexibility(build(A1T1, EX1))
    assert rep.verdict == NOT_FLEXIBLE
    assert rep.gamma_min == cone((1, 0), ambient_dim=2)
    assert rep.hyperplane_normal in ((0, 1), (0, -1))
    assert rep.module_gens.complete


def test_flexibility_example_two():
    h = build(A1T1, EX2)
    rep = flexibility(h, with_roots=True)
    assert rep.verdict == FLEXIBLE and rep.hyperplane_normal is None
    assert rep.gamma_min == cone((1, 0), (2, -1))
    sig = [rs for rs in rep.ray_statuses if rs.significant]
    assert [rs.ray for rs in sig] == [(2, -1)]
    assert sig[0].status == AlmostSaturated((1, 2))
    assert [r.e for r in rep.lnd_roots] == [(1, 3)]


def test_statuses_cover_every_ray():
    h = build(A1T1, EX2)
    st = ray_statuses(h)
    assert [rs.ray for rs in st] == list(h.sigma.extremal)
    assert all(rs.codim1 for rs in st)


def test_undecided_with_small_bounds():
    h = build(A1T1, EX2)
    rep = flexibility(h, Bounds(module_degree=1))
    assert rep.verdict == UNDECIDED
    assert not rep.module_gens.complete
    assert not rep.gamma_min.is_full_dimensional and rep.gamma_max.is_full_dimensional


def test_semisimple_only_is_flexible():
    h = build(GroupSpec((("A", 1),)), [(2,)])
    assert h.rank == 1 and dimension(h) == 2
    assert flexibility(h).verdict == FLEXIBLE


def test_torus_cases():
    t2 = GroupSpec((), 2)
    rep = flexibility(build(t2, [(1, 0), (0, 1)]), with_roots=True)
    assert rep.verdict == FLEXIBLE
    assert {r.e for r in rep.lnd_roots} == {(-1, 0), (0, -1)}
    line = build(GroupSpec((), 1), [(1,), (-1,)])
    rep = flexibility(line)
    assert rep.verdict == NOT_FLEXIBLE and rep.hyperplane_normal == (1,)
    assert has_nonconstant_invertible(line, rep.gamma_max)


def test_regular_locus_weights():
    h = build(A1T1, EX2)
    gamma = flexibility(h).gamma_min
    assert regular_locus_weight_cone(h, gamma) == cone((0, -1), (1, 2))
    assert not has_nonconstant_invertible(h, gamma)
    h1 = build(A1T1, EX1)
    assert has_nonconstant_invertible(h1, flexibility(h1).gamma_max)


def test_vanishing_order():
    h = build(A1T1, EX2)
    assert vanishing_order(h, (2, 0), (2, -1)) == 4
    assert vanishing_order(h, (1, 2), (0, 1)) == 2
    assert vanishing_order(h, (1, 2), 1) == vanishing_order(h, (1, 2), resolve_ray(h, 1))
    with pytest.raises(NotAWeight):
        vanishing_order(h, (-1, 0), (0, 1))


def test_find_lnd_root_search_and_construction():
    h = build(A1T1, EX2)
    found = find_lnd_root(h, (2, -1))
    assert isinstance(found, LndRoot) and found.method == "search" and found.e == (1, 3)
    assert ideal_generators(h, (2, -1)) == [(1, 1), (2, 0)]
    built = find_lnd_root(h, (2, -1), Bounds(root_height=0))
    assert isinstance(built, LndRoot) and built.method == "constructed"
    idx = h.sigma.extremal.index((2, -1))
    assert is_demazure_root(h.sigma, built.e, idx) and h.theta_dual.contains(built.e)
    assert all(ok for _, _, ok in built.shift_checks)


def test_find_lnd_root_failures():
    h1 = build(A1T1, EX1)
    with pytest.raises(NoLndExists):
        find_lnd_root(h1, (0, 1))
    with pytest.raises(BadRay):
        find_lnd_root(h1, (1, 0))  # orbit of codimension two
    with pytest.raises(BadRay):
        resolve_ray(h1, 7)
    h2 = build(A1T1, EX2)
    assert find_lnd_root(h2, (2, -1), Bounds(module_degree=1, root_height=0)) == LndNotFound(0)


def test_bounds_resolution():
    h = build(A1T1, EX2)
    b = Bounds(degree=5).resolve(h.semigroup)
    assert b.degree == 5
    assert b.module_degree == h.semigroup.completeness_degree()
    assert b.root_height == 12
    assert set(b.as_dict()) == {"degree", "module_degree", "search_degree", "root_height"}
