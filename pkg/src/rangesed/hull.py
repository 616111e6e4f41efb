"""Convex hulls: construction, merging, tangents, arc helpers.

Hulls are lists of Points in clockwise order starting at the
lexicographically smallest vertex, with no three consecutive vertices
collinear (strict convexity).  Size 1 and 2 hulls are allowed.
"""

from __future__ import annotations

from .errors import HullsOverlap
from .geom import cmp_dist_sq, orientation

_TANGENT_DANCE_CAP = 16


def _chain_cycle(pts):
    """Clockwise hull cycle of lexicographically sorted, deduped points."""
    if len(pts) <= 2:
        return list(pts)
    upper = []
    for p in pts:
        while len(upper) >= 2 and orientation(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        upper.append(p)
    lower = []
    for p in reversed(pts):
        while len(lower) >= 2 and orientation(lower[-2], lower[-1], p) >= 0:
            lower.pop()
        lower.append(p)
    return upper + lower[1:-1]


def _dedupe_sorted(pts):
    out = []
    for p in pts:
        if out and out[-1][0] == p[0] and out[-1][1] == p[1]:
            continue
        out.append(p)
    return out


def build_hull(points):
    """Convex hull of any point iterable, duplicates collapsed."""
    pts = _dedupe_sorted(sorted(points, key=lambda p: (p[0], p[1])))
    return _chain_cycle(pts)


def merge_hulls(h1, h2):
    """Hull of the union of two hulls' vertex sets."""
    pts = _dedupe_sorted(sorted(h1 + h2, key=lambda p: (p[0], p[1])))
    return _chain_cycle(pts)


def arc_slice(hull, i, j):
    """Vertices of the clockwise arc from index i to j, inclusive."""
    if i <= j:
        return hull[i : j + 1]
    return hull[i:] + hull[: j + 1]


def arc_len(h, i, j) -> int:
    """Vertex count of the clockwise arc from i to j on an h-gon."""
    return (j - i) % h + 1


def hull_bbox(hull):
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    return min(xs), max(xs), min(ys), max(ys)


def extreme_vertex(hull, direction) -> int:
    """Index of a vertex maximizing dot(direction, vertex)."""
    dx, dy = direction
    best = 0
    best_val = dx * hull[0][0] + dy * hull[0][1]
    for k in range(1, len(hull)):
        val = dx * hull[k][0] + dy * hull[k][1]
        if val > best_val:
            best, best_val = k, val
    return best


def tangent_point(p, hull, side: str) -> int:
    """Index v such that hull lies weakly on `side` of the ray p -> hull[v].

    Collinear ties resolve to the vertex nearer p.  Meaningful only for p
    strictly outside the hull; callers verify the result where it matters.
    """
    want = 1 if side == "right" else -1
    best = 0
    for u in range(1, len(hull)):
        o = orientation(p, hull[best], hull[u])
        if o == want:
            best = u
        elif o == 0 and cmp_dist_sq(p, hull[u], hull[best]) < 0:
            best = u
    return best


def _neighbors(hull, i):
    h = len(hull)
    if h == 1:
        return ()
    if h == 2:
        return (hull[1 - i],)
    return (hull[(i - 1) % h], hull[(i + 1) % h])


def bridge_ok(a_hull, i, b_hull, j) -> bool:
    """Exact check that both hulls lie weakly right of a_hull[i] -> b_hull[j]."""
    p, q = a_hull[i], b_hull[j]
    if p[0] == q[0] and p[1] == q[1]:
        return False
    for x in _neighbors(a_hull, i) + _neighbors(b_hull, j):
        if orientation(p, q, x) > 0:
            return False
    return True


def _bridge(a_hull, b_hull):
    """(i, j) with everything weakly right of a_hull[i] -> b_hull[j]."""
    i = 0
    for _ in range(_TANGENT_DANCE_CAP):
        j = tangent_point(a_hull[i], b_hull, "right")
        i2 = tangent_point(b_hull[j], a_hull, "left")
        if i2 == i:
            if bridge_ok(a_hull, i, b_hull, j):
                return i, j
            break
        i = i2
    # Degenerate alignment or a rare non-converging start: certify by scan.
    for i in range(len(a_hull)):
        for j in range(len(b_hull)):
            if bridge_ok(a_hull, i, b_hull, j):
                return i, j
    raise HullsOverlap("no outer tangent: hulls intersect")


def tangent_between(h1, h2):
    """Both outer tangents of two disjoint hulls.

    Returns ((i, j), (k, l)) where every vertex of both hulls is weakly
    right of the directed lines h1[i] -> h2[j] and h2[k] -> h1[l].
    Raises HullsOverlap when no such tangent exists.
    """
    return _bridge(h1, h2), _bridge(h2, h1)
