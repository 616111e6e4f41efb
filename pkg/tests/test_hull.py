import random

import pytest

from helpers import mk_points, rand_points
from rangesed.errors import HullsOverlap
from rangesed.geom import orientation
from rangesed.hull import (
    arc_len,
    arc_slice,
    bridge_ok,
    build_hull,
    extreme_vertex,
    hull_bbox,
    merge_hulls,
    tangent_between,
    tangent_point,
)


def check_hull(hull, points):
    positions = {(p[0], p[1]) for p in points}
    assert all((v[0], v[1]) in positions for v in hull)
    assert len({(v[0], v[1]) for v in hull}) == len(hull)
    # Starts at the lexicographic minimum.
    assert (hull[0][0], hull[0][1]) == min(positions)
    h = len(hull)
    if h >= 3:
        for k in range(h):
            a, b, c = hull[k], hull[(k + 1) % h], hull[(k + 2) % h]
            assert orientation(a, b, c) == -1  # strictly convex, clockwise
        for k in range(h):
            a, b = hull[k], hull[(k + 1) % h]
            for p in points:
                assert orientation(a, b, p) <= 0


def test_build_hull_square():
    pts = mk_points([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)])
    hull = build_hull(pts)
    assert [(v.x, v.y) for v in hull] == [(0, 0), (0, 1), (1, 1), (1, 0)]


def test_build_hull_degenerate_sizes():
    p = mk_points([(2, 3)])
    assert build_hull(p) == p
    two = mk_points([(5, 1), (2, 3)])
    hull = build_hull(two)
    assert [(v.x, v.y) for v in hull] == [(2, 3), (5, 1)]
    # Duplicates collapse.
    assert len(build_hull(mk_points([(1, 1), (1, 1), (1, 1)]))) == 1


def test_build_hull_all_collinear():
    pts = mk_points([(0, 0), (1, 1), (3, 3), (2, 2)])
    hull = build_hull(pts)
    assert [(v.x, v.y) for v in hull] == [(0, 0), (3, 3)]


def test_build_hull_random():
    rng = random.Random(72001)
    for _ in range(60):
        pts = rand_points(rng, rng.randint(1, 80))
        check_hull(build_hull(pts), pts)


def test_build_hull_grid_collinear_rich():
    rng = random.Random(72002)
    for _ in range(60):
        pts = rand_points(rng, rng.randint(3, 60), lo=-4, hi=4, grid=1)
        check_hull(build_hull(pts), pts)


def test_merge_hulls_matches_direct():
    rng = random.Random(72003)
    for _ in range(60):
        a = rand_points(rng, rng.randint(1, 40))
        b = rand_points(rng, rng.randint(1, 40), lo=-50, hi=150)
        b = [type(p)(p.x, p.y, p.id + 1000) for p in b]
        merged = merge_hulls(build_hull(a), build_hull(b))
        direct = build_hull(a + b)
        assert [(v.x, v.y) for v in merged] == [(v.x, v.y) for v in direct]


def test_arc_helpers():
    hull = mk_points([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert arc_slice(hull, 1, 3) == hull[1:4]
    assert arc_slice(hull, 3, 1) == [hull[3], hull[0], hull[1]]
    assert arc_len(4, 1, 3) == 3
    assert arc_len(4, 3, 1) == 3
    assert arc_len(4, 2, 2) == 1


def test_hull_bbox_and_extremes():
    hull = build_hull(mk_points([(0, 0), (4, -1), (5, 3), (1, 2)]))
    assert hull_bbox(hull) == (0, 5, -1, 3)
    ne = hull[extreme_vertex(hull, (1, 1))]
    assert (ne.x, ne.y) == (5, 3)
    sw = hull[extreme_vertex(hull, (-1, -1))]
    assert (sw.x, sw.y) in {(0, 0), (4, -1)}


def test_tangent_point_square():
    hull = build_hull(mk_points([(0, 0), (0, 1), (1, 1), (1, 0)]))
    p = (-2.0, 0.5)
    r = hull[tangent_point(p, hull, "right")]
    l = hull[tangent_point(p, hull, "left")]
    assert (r.x, r.y) == (0, 1)
    assert (l.x, l.y) == (0, 0)


def full_bridge_check(a_hull, i, b_hull, j):
    p, q = a_hull[i], b_hull[j]
    return all(
        orientation(p, q, x) <= 0 for x in list(a_hull) + list(b_hull)
    )


def separated_hull_pair(rng):
    na, nb = rng.randint(1, 30), rng.randint(1, 30)
    a = rand_points(rng, na, lo=-50, hi=-5)
    b = rand_points(rng, nb, lo=5, hi=50)
    b = [type(p)(p.x, p.y, p.id + 500) for p in b]
    if rng.random() < 0.5:
        # Rotate the gap axis so separation is not always vertical.
        a = [type(p)(p.y, -p.x, p.id) for p in a]
        b = [type(p)(p.y, -p.x, p.id) for p in b]
    return build_hull(a), build_hull(b)


def test_tangent_between_random_disjoint():
    rng = random.Random(72004)
    for _ in range(120):
        ha, hb = separated_hull_pair(rng)
        (i, j), (k, l) = tangent_between(ha, hb)
        assert full_bridge_check(ha, i, hb, j)
        assert full_bridge_check(hb, k, ha, l)
        assert bridge_ok(ha, i, hb, j)
        assert bridge_ok(hb, k, ha, l)


def test_tangent_between_nested_raises():
    inner = build_hull(mk_points([(-1, -1), (1, -1), (1, 1), (-1, 1)]))
    outer = build_hull(
        mk_points([(-9, -9), (9, -9), (9, 9), (-9, 9), (0, -9.5)])
    )
    with pytest.raises(HullsOverlap):
        tangent_between(outer, inner)


def test_tangent_between_collinear_alignment():
    # Hulls sharing a supporting line: tangents still verify weakly.
    ha = build_hull(mk_points([(0, 0), (1, 0), (0.5, 1)]))
    hb = build_hull([type(p)(p.x + 5, p.y, p.id + 10) for p in ha])
    (i, j), (k, l) = tangent_between(ha, hb)
    assert full_bridge_check(ha, i, hb, j)
    assert full_bridge_check(hb, k, ha, l)
