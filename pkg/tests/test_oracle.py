from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from horoflex import oracle


def test_in_cone():
    gens = [(1, 0), (1, 2)]
    assert oracle.in_cone(gens, (3, 2)) and oracle.in_cone(gens, (0, 0))
    assert not oracle.in_cone(gens, (0, 1)) and not oracle.in_cone(gens, (-1, 0))


def test_reachable_and_member():
    r = oracle.reachable([(3,), (5,)], 3)
    assert (8,) in r and (7,) not in r and (15,) in r
    assert oracle.brute_member([(3,), (5,)], (13,), 5)
    assert not oracle.brute_member([(3,), (5,)], (7,), 5)


def test_cone_inequalities():
    assert oracle.cone_inequalities([(2, 0), (1, 1), (1, 2)]) == [(0, 1), (2, -1)]
    assert oracle.cone_inequalities([(3,), (5,)]) == [(1,)]
    cube = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    assert oracle.cone_inequalities(cube) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_brute_holes_examples():
    assert oracle.brute_holes([(2, 0), (1, 1), (0, 1)], 5, (1, 1)) == [(1, 0), (3, 0), (5, 0)]
    assert oracle.brute_holes([(2, 0), (1, 1), (1, 2)], 8, (2, 0)) == [(1, 0), (2, 1), (3, 0), (4, 1)]
    assert oracle.brute_holes([(3,), (5,)], 10, (1,)) == [(1,), (2,), (4,), (7,)]


def test_brute_saturation_point():
    gens = [(2, 0), (1, 1), (1, 2)]
    assert oracle.brute_saturation_point(gens, (1, 2), 12, (1, 0))
    assert not oracle.brute_saturation_point(gens, (2, 0), 12, (1, 0))
    both = oracle.brute_saturation_points(gens, [(1, 2), (2, 0)], 4, (1, 0))
    assert both == {(1, 2): True, (2, 0): False}


def test_toric_criterion():
    assert oracle.toric_cone_2d([(1, 0), (1, 1), (0, 1)]) == ((1, 0), (0, 1))
    assert oracle.toric_cone_2d([(1, 0), (-1, 0), (0, 1)]) is None
    assert oracle.toric_flexible_2d([(1, 0), (0, 1)])
    assert not oracle.toric_flexible_2d([(1, 0), (-1, 0), (0, 1)])
    assert not oracle.toric_flexible_2d([(2, 0), (1, 1), (0, 1)])
    assert not oracle.toric_flexible_2d([(2, 0), (1, 1), (1, 2)])
    assert oracle.toric_flexible_2d([(2, 0), (3, 0), (0, 1), (1, 1)])


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), min_size=2, max_size=4))
def test_two_cone_tests_agree(gens):
    gens = [g for g in gens if any(g)]
    if len(gens) < 2 or not any(a[0] * b[1] - a[1] * b[0] for a in gens for b in gens):
        return
    ineqs = oracle.cone_inequalities(gens)
    if not ineqs:  # the generators span a half-plane or more
        return
    for v in product(range(-3, 4), repeat=2):
        assert oracle.in_cone(gens, v) == all(a[0] * v[0] + a[1] * v[1] >= 0 for a in ineqs)


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(0, 3)), min_size=2, max_size=3))
def test_two_membership_routes_agree(gens):
    grading = (1, 0)
    if not any(a[0] * b[1] - a[1] * b[0] for a in gens for b in gens):
        return
    box, _ = oracle.lattice_box(gens, grading, 6)
    assert oracle.members_up_to(gens, grading, 6, box) == oracle.reachable(gens, 6) & set(box)
