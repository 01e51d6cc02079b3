import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from beacon_route.attraction import (
    MoveKind,
    Status,
    attraction_path,
    attracts,
    covers,
    is_local,
    is_visible,
    path_rect_support,
    staircase_visible,
)
from beacon_route.decomposition import vertical_decomposition
from beacon_route.geometry import PointOutsidePolygon, generate_random_orthogonal, pt, validate_polygon
from beacon_route.spiral import SpiralSpec, generate_spiral
from helpers import corpus, decomposition_of, grid_staircase_oracle, load_fixture, monotone, polygon_points, sq_dist

L_SHAPE = validate_polygon([(0, 0), (3, 0), (3, 2), (1, 2), (1, 4), (0, 4)])
U_SHAPE = validate_polygon([(0, 0), (6, 0), (6, 5), (4, 5), (4, 2), (2, 2), (2, 4), (0, 4)])
CURL = validate_polygon([(-2, 0), (4, 0), (4, 6), (2, 6), (2, 3), (0, 3), (0, 5), (-2, 5)])
STAIRS = validate_polygon([(0, 0), (5, 0), (5, 1), (4, 1), (4, 2), (3, 2), (3, 3), (2, 3), (2, 4), (1, 4), (1, 5), (0, 5)])
half = mpq(1, 2)


def test_rectangle_is_one_straight_move():
    rect = load_fixture("rectangle")
    bb = rect.bbox
    a = attraction_path(rect, bb.lo, bb.hi)
    assert a.reached and len(a.events) == 1 and a.events[0].kind is MoveKind.STRAIGHT


def test_at_beacon_is_empty_path():
    a = attraction_path(L_SHAPE, pt(1, 1), pt(1, 1))
    assert a.reached and a.events == ()


def test_l_shape_turns_the_corner():
    a = attraction_path(L_SHAPE, pt(2, 1), pt(half, 3))
    assert [e.kind for e in a.events] == [MoveKind.STRAIGHT, MoveKind.SLIDE, MoveKind.STRAIGHT]
    # top wall of the foot, along it to the reflex vertex, then free
    assert a.points == [pt(2, 1), pt(mpq(5, 4), 2), pt(1, 2), pt(half, 3)]
    assert a.reached


def test_u_shape_stuck_perpendicular():
    a = attraction_path(U_SHAPE, pt(1, 3), pt(5, 3))
    assert a.terminal.status is Status.STUCK_PERPENDICULAR
    assert a.terminal.point == pt(2, 3)


def test_reflex_curl_is_indeterminate():
    a = attraction_path(CURL, pt(0, 3), pt(3, 5))
    assert a.terminal.status is Status.INDETERMINATE
    assert a.terminal.point == pt(0, 3)


def test_asymmetric_pair():
    p, q = pt(half, 3), pt(5, 2)
    assert attracts(U_SHAPE, q, p)
    assert not attracts(U_SHAPE, p, q)
    assert attraction_path(U_SHAPE, q, p).terminal.status.stuck
    assert not covers(U_SHAPE, p, q)


def test_covers_trivial_cases():
    assert covers(L_SHAPE, pt(1, 1), pt(1, 1))
    assert covers(L_SHAPE, pt(half, half), pt(half, 3))


def test_outside_point_rejected():
    with pytest.raises(PointOutsidePolygon):
        attraction_path(L_SHAPE, pt(2, 3), pt(half, half))


def test_visibility_examples():
    rect = load_fixture("rectangle")
    assert is_visible(rect, rect.bbox.lo, rect.bbox.hi)
    assert not is_visible(L_SHAPE, pt(mpq(5, 2), 1), pt(half, mpq(7, 2)))
    assert is_visible(L_SHAPE, pt(1, 2), pt(3, 2))   # along the top edge of the foot


def test_spiral_far_hallways_not_staircase_visible():
    sp = generate_spiral(SpiralSpec.default(1))
    a, b = sp.hallway(1).center, sp.hallway(4).center
    assert not staircase_visible(sp.poly, a, b)
    assert not grid_staircase_oracle(sp.poly, a, b)


# --------------------------------------------------------------------------
# locality


def test_support_inside_one_rect():
    d = vertical_decomposition(L_SHAPE)
    a = attraction_path(L_SHAPE, pt(half, half), pt(half, 3))
    assert path_rect_support(a, d) == {0} and is_local(a, d)


def test_support_around_corner():
    d = vertical_decomposition(L_SHAPE)
    a = attraction_path(L_SHAPE, pt(2, 1), pt(half, 3))
    assert path_rect_support(a, d) == {0, 1} and is_local(a, d)


def test_staircase_diagonal_is_not_local():
    d = vertical_decomposition(STAIRS)
    a = attraction_path(STAIRS, pt(half, 4), pt(mpq(9, 2), half))
    assert a.reached
    assert path_rect_support(a, d) == {0, 1, 2, 3, 4}
    assert not is_local(a, d)


# --------------------------------------------------------------------------
# invariants on sampled pairs


def _check_path(poly, a):
    pts = a.points
    assert monotone(p.x for p in pts) and monotone(p.y for p in pts)
    ds = [sq_dist(p, a.beacon) for p in pts]
    assert all(u > v for u, v in zip(ds, ds[1:]))
    assert len(a.events) <= 2 * poly.n
    for u, v in zip(pts, pts[1:]):
        assert u != v and poly.index.segment_inside(u, v)
    assert a.reached == (pts[-1] == a.beacon)


@pytest.mark.parametrize("idx", range(0, 100, 9))
def test_sandwich_and_monotonicity(idx):
    poly = corpus()[idx]
    rng = random.Random(idx)
    pts = polygon_points(poly, rng, 60)
    for p, q in zip(pts, pts[1:] + pts[:1]):
        a = attraction_path(poly, p, q)
        _check_path(poly, a)
        if is_visible(poly, p, q):
            assert a.reached
        if a.reached:
            assert staircase_visible(poly, p, q)


def test_staircase_matches_grid_oracle_small():
    poly = load_fixture("basis_n10")
    rng = random.Random(3)
    pts = polygon_points(poly, rng, 40)
    for p, q in zip(pts, reversed(pts)):
        assert staircase_visible(poly, p, q) == grid_staircase_oracle(poly, p, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5000), st.integers(0, 2 ** 20))
def test_path_invariants_property(seed, salt):
    poly = generate_random_orthogonal(14, seed)
    rng = random.Random(salt)
    p, q = polygon_points(poly, rng, 2)
    a = attraction_path(poly, p, q)
    _check_path(poly, a)
    if a.reached:
        assert staircase_visible(poly, p, q)
