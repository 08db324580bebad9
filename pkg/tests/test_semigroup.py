from itertools import product

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from horoflex import oracle
from horoflex.cones import faces
from horoflex.errors import NotInSemigroup, ShapeMismatch
from horoflex.exactlat.vectors import dot
from horoflex.semigroup import (
    AffineSemigroup,
    AlmostSaturated,
    NowhereSaturatedCertified,
    UndecidedUpToBound,
    face_saturation_status,
    hilbert_basis,
    is_saturation_point,
    member,
    module_generators,
    saturation_holes,
)

EX1 = [(2, 0), (1, 1), (0, 1)]
EX2 = [(2, 0), (1, 1), (1, 2)]


def face_of(s, ray):
    return next(fp for fp in faces(s.sigma) if fp.tau.extremal == (ray,))


def test_membership_example_one():
    s = AffineSemigroup(EX1)
    assert member(s, (2, 0)) and member(s, (3, 1)) and member(s, (0, 7))
    assert not member(s, (1, 0)) and not member(s, (3, 0)) and not member(s, (-1, 2))
    cert = s.member_certificate((4, 3))
    assert sum(c * g[0] for c, g in zip(cert, s.gens)) == 4
    assert sum(c * g[1] for c, g in zip(cert, s.gens)) == 3
    assert s.member_certificate((1, 0)) is None


def test_holes_example_one():
    s = AffineSemigroup(EX1)
    assert s.grading == (1, 1)
    assert saturation_holes(s, 5) == [(1, 0), (3, 0), (5, 0)]


def test_holes_example_two():
    s = AffineSemigroup(EX2)
    assert saturation_holes(s, 8) == [(1, 0), (2, 1), (3, 0), (4, 1)]
    assert hilbert_basis(s, 8) == [(1, 0), (1, 1), (1, 2)]


def test_module_generators_are_complete():
    for gens in (EX1, EX2):
        s = AffineSemigroup(gens)
        mg = module_generators(s)
        assert mg.gens == ((0, 0), (1, 0)) and mg.complete
        assert not module_generators(s, 0).complete


def test_saturation_points():
    s = AffineSemigroup(EX2)
    mg = module_generators(s)
    assert is_saturation_point(s, mg, (1, 2))
    assert not is_saturation_point(s, mg, (2, 0))
    with pytest.raises(NotInSemigroup):
        is_saturation_point(s, mg, (1, 0))


def test_face_status_examples():
    s1 = AffineSemigroup(EX1)
    st1 = face_saturation_status(s1, face_of(s1, (0, 1)), module_generators(s1))
    assert isinstance(st1, NowhereSaturatedCertified)
    assert st1.obstruction.replay(s1.gens, face_of(s1, (0, 1)).dual_support)
    s2 = AffineSemigroup(EX2)
    mg = module_generators(s2)
    st2 = face_saturation_status(s2, face_of(s2, (2, -1)), mg)
    assert st2 == AlmostSaturated((1, 2))
    st3 = face_saturation_status(s2, face_of(s2, (0, 1)), mg)
    assert isinstance(st3, NowhereSaturatedCertified)
    assert st3.obstruction.replay(s2.gens, face_of(s2, (0, 1)).dual_support)


def test_face_status_undecided_with_partial_generators():
    s = AffineSemigroup(EX2)
    st = face_saturation_status(s, face_of(s, (2, -1)), module_generators(s, 0))
    assert st == UndecidedUpToBound(0)


def test_lineality_semigroup():
    s = AffineSemigroup([(1, 0), (-1, 0), (0, 2), (1, 2), (0, 3)])
    assert s.cone.lineality_dim == 1
    assert s.member((-5, 2)) and s.member((4, 3)) and not s.member((0, 1)) and not s.member((3, -2))
    assert [v for v in saturation_holes(s, 2) if not any(s.l_coordinates(v))] == [(0, 1)]
    hb = hilbert_basis(s, 4)
    assert (1, 0) in hb and (-1, 0) in hb
    mg = module_generators(s)
    assert mg.complete
    for v in product(range(-3, 4), range(0, 6)):
        assert any(s.member(tuple(a - b for a, b in zip(v, m))) for m in mg.gens)


def test_numerical_semigroup():
    s = AffineSemigroup([(3,), (5,)])
    assert saturation_holes(s, 10) == [(1,), (2,), (4,), (7,)]


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        AffineSemigroup([(2, 0), (0, 2)])  # spans an index-4 sublattice
    with pytest.raises(ShapeMismatch):
        AffineSemigroup(EX1).member((1, 2, 3))


# -- properties ----------------------------------------------------------------------

def spanning_pointed(gens):
    gens = [g for g in gens if any(g)]
    if len(gens) < 2:
        return None
    try:
        s = AffineSemigroup(gens)
    except ShapeMismatch:
        return None
    return s if not s.cone.lineality else None


plane_gens = st.lists(st.tuples(st.integers(0, 4), st.integers(-2, 4)), min_size=2, max_size=4)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(plane_gens)
def test_member_and_holes_match_oracle(gens):
    s = spanning_pointed(gens)
    assume(s is not None)
    deg = 8
    gs = [g for g in s.gens if any(g)]
    assert saturation_holes(s, deg) == oracle.brute_holes(gs, deg, s.grading)
    box, _ = oracle.lattice_box(gs, s.grading, deg)
    members = oracle.members_up_to(gs, s.grading, deg, box)
    assert all(s.member(v) == (v in members) for v in box)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(plane_gens)
def test_saturation_points_are_closed_under_addition(gens):
    s = spanning_pointed(gens)
    assume(s is not None)
    mg = module_generators(s)
    assert mg.complete
    pts = [v for v in s.saturation_points(6) if s.member(v) and is_saturation_point(s, mg, v)]
    for p in pts[:6]:
        for g in s.gens:
            assert is_saturation_point(s, mg, tuple(a + b for a, b in zip(p, g)))


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(plane_gens)
def test_module_generators_cover_saturation(gens):
    s = spanning_pointed(gens)
    assume(s is not None)
    mg = module_generators(s)
    for v in s.saturation_points(s.completeness_degree() + 4):
        assert any(s.member(tuple(a - b for a, b in zip(v, m))) for m in mg.gens)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(plane_gens)
def test_face_status_is_certified(gens):
    s = spanning_pointed(gens)
    assume(s is not None)
    mg = module_generators(s)
    for fp in faces(s.sigma):
        if fp.tau.dim != 1:
            continue
        st = face_saturation_status(s, fp, mg)
        if isinstance(st, AlmostSaturated):
            w = st.witness
            assert dot(w, fp.tau.extremal[0]) == 0 and is_saturation_point(s, mg, w)
        else:
            assert isinstance(st, NowhereSaturatedCertified)
            assert st.obstruction.replay(s.gens, fp.dual_support)
