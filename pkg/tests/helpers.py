"""Shared test utilities."""

from __future__ import annotations

import math
import random

from rangesed.geom import Point


def mk_points(coords):
    """Wrap (x, y) pairs as Points with sequential ids."""
    return [Point(float(x), float(y), i) for i, (x, y) in enumerate(coords)]


def rand_points(rng: random.Random, n: int, lo=-100.0, hi=100.0, grid=None):
    """n random points; grid snaps coordinates to multiples of 1/grid."""
    pts = []
    seen = set()
    while len(pts) < n:
        x = rng.uniform(lo, hi)
        y = rng.uniform(lo, hi)
        if grid:
            x = round(x * grid) / grid
            y = round(y * grid) / grid
        if (x, y) in seen:
            continue
        seen.add((x, y))
        pts.append(Point(x, y, len(pts)))
    return pts


def cocircular_points(rng: random.Random, n: int, cx=0.0, cy=0.0, r=10.0):
    """n distinct points laid out on a circle, coordinates rounded."""
    pts = []
    seen = set()
    while len(pts) < n:
        t = rng.uniform(0.0, 2.0 * math.pi)
        x = cx + r * math.cos(t)
        y = cy + r * math.sin(t)
        if (x, y) in seen:
            continue
        seen.add((x, y))
        pts.append(Point(x, y, len(pts)))
    return pts


# All 12 lattice points on x^2 + y^2 = 25: exactly co-circular in floats.
CIRCLE25 = [
    (5, 0), (4, 3), (3, 4), (0, 5), (-3, 4), (-4, 3),
    (-5, 0), (-4, -3), (-3, -4), (0, -5), (3, -4), (4, -3),
]


def circle25_points(ids=None):
    coords = CIRCLE25
    pts = mk_points(coords)
    if ids is not None:
        pts = [Point(p.x, p.y, i) for p, i in zip(pts, ids)]
    return pts


def assert_same_disk(got, want, tol=1e-9):
    assert got is not None and want is not None
    scale = max(want.radius_sq, 1e-30)
    assert abs(got.radius_sq - want.radius_sq) <= tol * scale
    assert math.dist(got.center, want.center) <= tol * max(1.0, math.sqrt(scale))


def assert_fpvd_equal(got, want, tol=1e-9):
    """Compare two farthest-point Voronoi diagrams structurally."""
    assert sorted(v.triple for v in got.vertices) == sorted(v.triple for v in want.vertices)
    gv = {v.triple: v for v in got.vertices}
    wv = {v.triple: v for v in want.vertices}
    for triple, v in gv.items():
        w = wv[triple]
        scale = max(1.0, abs(w.pos[0]), abs(w.pos[1]))
        assert math.dist(v.pos, w.pos) <= tol * scale, (triple, v.pos, w.pos)
    assert sorted(got.edges) == sorted(want.edges)
    for pair, e in got.edges.items():
        f = want.edges[pair]
        assert e.bounded == f.bounded, pair
        assert sorted(gv[got.vertices[i].triple].triple for i in e.vs) == \
            sorted(wv[want.vertices[i].triple].triple for i in f.vs)
        assert len(e.rays) == len(f.rays), pair
        for (ga, gd), (fa, fd) in zip(sorted(e.rays), sorted(f.rays)):
            ns = math.hypot(*gd) * math.hypot(*fd)
            cross = gd[0] * fd[1] - gd[1] * fd[0]
            dot = gd[0] * fd[0] + gd[1] * fd[1]
            assert abs(cross) <= tol * ns and dot > 0, (pair, gd, fd)
    assert got.cells == want.cells
