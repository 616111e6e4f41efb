"""Self-contained SVG drawings of point scenes.

Scenes are built from world-coordinate primitives (points, a hull
outline, diagram segments and rays, a disk, a rectangle) and emitted
as one flat ``<svg>`` document with a fixed palette.  The pixel frame
is derived from the bounding box of the bounded primitives, so callers
never deal with viewports; unbounded rays are clipped to that frame.

This is a quick visual check, not a plotting library: no styling
hooks, no text, no interactivity.
"""

from __future__ import annotations

import math

from .errors import TooFewPoints

_POINT = "#475569"
_MARK = "#0f172a"
_HULL = "#2563eb"
_EDGE = "#94a3b8"
_DISK = "#dc2626"
_RECT = "#059669"

_MARGIN = 18  # pixels kept clear around the drawing


def fpvd_graphics(fp):
    """Split a diagram into drawable (segments, rays).

    Each segment is ((x, y), (x, y)); each ray is (anchor, direction)
    with an unnormalized direction, both in world coordinates.
    """
    segments = []
    rays = []
    for edge in fp.edges.values():
        if edge.bounded:
            a = fp.vertices[edge.vs[0]].pos
            b = fp.vertices[edge.vs[1]].pos
            segments.append((a, b))
        else:
            rays.extend(edge.rays)
    return segments, rays


def bisector_graphics(p, q):
    """The perpendicular bisector of two points, as two opposite rays."""
    mx, my = (p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0
    dx, dy = q[0] - p[0], q[1] - p[1]
    return [((mx, my), (-dy, dx)), ((mx, my), (dy, -dx))]


class _Frame:
    """World-to-pixel mapping with a y flip and fixed pixel margin."""

    def __init__(self, xlo, ylo, xhi, yhi, width):
        # Degenerate extents still need a usable scale.
        if xhi - xlo < 1e-12:
            xlo, xhi = xlo - 1.0, xhi + 1.0
        if yhi - ylo < 1e-12:
            ylo, yhi = ylo - 1.0, yhi + 1.0
        self.xlo, self.ylo, self.xhi, self.yhi = xlo, ylo, xhi, yhi
        self.scale = (width - 2 * _MARGIN) / (xhi - xlo)
        self.width = width
        self.height = int(math.ceil((yhi - ylo) * self.scale)) + 2 * _MARGIN

    def px(self, p):
        x = _MARGIN + (p[0] - self.xlo) * self.scale
        y = _MARGIN + (self.yhi - p[1]) * self.scale
        return f"{x:.2f}", f"{y:.2f}"

    def clip_ray(self, anchor, direction):
        """World endpoint where the ray leaves the frame, or None."""
        ax, ay = anchor
        dx, dy = direction
        t = math.inf
        if dx > 0:
            t = min(t, (self.xhi - ax) / dx)
        elif dx < 0:
            t = min(t, (self.xlo - ax) / dx)
        if dy > 0:
            t = min(t, (self.yhi - ay) / dy)
        elif dy < 0:
            t = min(t, (self.ylo - ay) / dy)
        if not math.isfinite(t) or t <= 0:
            return None
        return (ax + t * dx, ay + t * dy)


def _bounds(points, segments, disk, rect):
    xs, ys = [], []
    for p in points:
        xs.append(p[0])
        ys.append(p[1])
    for a, b in segments:
        xs.extend((a[0], b[0]))
        ys.extend((a[1], b[1]))
    if disk is not None:
        r = math.sqrt(disk.radius_sq)
        xs.extend((disk.center[0] - r, disk.center[0] + r))
        ys.extend((disk.center[1] - r, disk.center[1] + r))
    if rect is not None:
        xs.extend((rect[0], rect[2]))
        ys.extend((rect[1], rect[3]))
    if not xs:
        raise TooFewPoints("nothing to draw")
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    padx = 0.04 * (xhi - xlo) or 1.0
    pady = 0.04 * (yhi - ylo) or 1.0
    return xlo - padx, ylo - pady, xhi + padx, yhi + pady


def render_scene(points, *, marked=(), hull=None, segments=(), rays=(),
                 disk=None, rect=None, width=720):
    """One SVG document string drawing the given primitives.

    points and marked are coordinate pairs (marked drawn darker and a
    touch larger); hull is a closed polygon's vertex list; segments and
    rays come from fpvd_graphics or bisector_graphics; rect is
    (xlo, ylo, xhi, yhi).  Raises TooFewPoints when there is nothing
    with finite extent to size the frame by.
    """
    points = [(p[0], p[1]) for p in points]
    marked = [(p[0], p[1]) for p in marked]
    segments = list(segments)
    frame = _Frame(*_bounds(points + marked, segments, disk, rect), width=width)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width}" '
        f'height="{frame.height}" viewBox="0 0 {frame.width} {frame.height}">',
        f'<rect width="{frame.width}" height="{frame.height}" fill="#ffffff"/>',
    ]

    def line(a, b, color, dash=None):
        (x1, y1), (x2, y2) = frame.px(a), frame.px(b)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                   f'stroke="{color}" stroke-width="1.2"{extra}/>')

    if rect is not None:
        (x1, y1) = frame.px((rect[0], rect[3]))
        (x2, y2) = frame.px((rect[2], rect[1]))
        w = f"{float(x2) - float(x1):.2f}"
        h = f"{float(y2) - float(y1):.2f}"
        out.append(f'<rect x="{x1}" y="{y1}" width="{w}" height="{h}" '
                   f'fill="none" stroke="{_RECT}" stroke-width="1.4" '
                   f'stroke-dasharray="6 4"/>')

    for a, b in segments:
        line(a, b, _EDGE)
    for anchor, direction in rays:
        end = frame.clip_ray(anchor, direction)
        if end is not None:
            line(anchor, end, _EDGE, dash="4 4")

    if hull is not None and len(hull) >= 2:
        pts = " ".join(",".join(frame.px(p)) for p in hull)
        out.append(f'<polygon points="{pts}" fill="none" stroke="{_HULL}" '
                   f'stroke-width="1.4"/>')

    if disk is not None:
        cx, cy = frame.px(disk.center)
        r = f"{math.sqrt(disk.radius_sq) * frame.scale:.2f}"
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{_DISK}" '
                   f'fill-opacity="0.05" stroke="{_DISK}" stroke-width="1.4"/>')
        out.append(f'<circle cx="{cx}" cy="{cy}" r="2.0" fill="{_DISK}"/>')

    for group, color, radius in ((points, _POINT, 2.0), (marked, _MARK, 2.6)):
        for p in group:
            x, y = frame.px(p)
            out.append(f'<circle cx="{x}" cy="{y}" r="{radius}" fill="{color}"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
