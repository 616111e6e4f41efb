import math

import pytest

from rangesed.errors import TooFewPoints
from rangesed.fpvd import PreparedSet
from rangesed.geom import Disk
from rangesed.svg import (
    _Frame,
    bisector_graphics,
    fpvd_graphics,
    render_scene,
)


def test_empty_scene_rejected():
    with pytest.raises(TooFewPoints):
        render_scene([])


def test_frame_flips_y_and_clips_rays():
    fr = _Frame(-1.0, -1.0, 1.0, 1.0, width=200)
    _, y_hi = fr.px((0.0, 1.0))
    _, y_lo = fr.px((0.0, -1.0))
    assert float(y_hi) < float(y_lo)

    end = fr.clip_ray((0.0, 0.0), (1.0, 0.0))
    assert end == (1.0, 0.0)
    end = fr.clip_ray((0.0, 0.0), (-2.0, -2.0))
    assert end == (-1.0, -1.0)
    assert fr.clip_ray((0.0, 0.0), (0.0, 0.0)) is None


def test_triangle_scene_has_rays_and_disk():
    pts = [(0.0, 0.0), (10.0, 0.0), (5.0, 8.0)]
    ps = PreparedSet.from_points(pts)
    segments, rays = fpvd_graphics(ps.fpvd)
    assert segments == []
    assert len(rays) == 3

    doc = render_scene(pts, hull=ps.hull, segments=segments, rays=rays,
                       disk=Disk((5.0, 2.0), 30.0))
    assert doc.startswith("<svg ")
    assert doc.rstrip().endswith("</svg>")
    assert doc.count('stroke-dasharray="4 4"') == 3
    assert "<polygon" in doc
    assert "<circle" in doc


def test_square_diagram_has_one_bounded_edge():
    pts = [(0.0, 0.0), (10.0, 0.0), (10.0, 7.0), (0.0, 7.0)]
    segments, rays = fpvd_graphics(PreparedSet.from_points(pts).fpvd)
    assert len(segments) == 1
    assert len(rays) == 4


def test_bisector_is_two_opposite_perpendicular_rays():
    p, q = (0.0, 0.0), (4.0, 2.0)
    rays = bisector_graphics(p, q)
    assert len(rays) == 2
    (a1, d1), (a2, d2) = rays
    assert a1 == a2 == (2.0, 1.0)
    assert d1[0] * (q[0] - p[0]) + d1[1] * (q[1] - p[1]) == 0.0
    assert d1 == (-d2[0], -d2[1])


def test_rect_and_marked_points_drawn():
    doc = render_scene([(0.0, 0.0)], marked=[(5.0, 5.0), (6.0, 6.0)],
                       rect=(4.0, 4.0, 7.0, 7.0))
    assert 'stroke-dasharray="6 4"' in doc  # the rectangle outline
    # one plain point, two marked, no disk
    assert doc.count('r="2.0"') == 1
    assert doc.count('r="2.6"') == 2


def test_disk_sized_by_scale():
    # Frame is 2 world units wide; disk radius 0.5 world units.
    doc = render_scene([(-1.0, 0.0), (1.0, 0.0)],
                       disk=Disk((0.0, 0.0), 0.25))
    fr = _Frame(*_borders(doc), width=720)
    want = 0.5 * fr.scale
    marker = f'r="{want:.2f}"'
    assert marker in doc


def _borders(doc):
    # The scene above pads its own bounds; recompute them the same way.
    xs = (-1.0, 1.0)
    pad = 0.04 * (xs[1] - xs[0])
    ylo, yhi = -0.5, 0.5
    pady = 0.04 * (yhi - ylo)
    return xs[0] - pad, ylo - pady, xs[1] + pad, yhi + pady
