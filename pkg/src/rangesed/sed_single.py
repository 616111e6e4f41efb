"""Smallest enclosing disk of one prepared point set.

The disk center is either the circumcenter of a non-obtuse triple of
hull vertices or the midpoint of an antipodal pair.  Both live on the
skeleton of the farthest-point diagram, so the center is found by
walking the centroid decomposition of that skeleton: at each diagram
vertex the defining triple either answers directly (non-obtuse) or the
center lies strictly beyond exactly one incident edge.
"""

from __future__ import annotations

from fractions import Fraction

from .centroid import Descend, Success
from .errors import EmptyQuery, InconsistentOracle
from .fpvd import PreparedSet
from .geom import (
    Disk,
    circumcenter_exact,
    disk_from_pair,
    disk_from_triple,
    non_obtuse,
    orientation,
)


def center_side_pair(hull, triple):
    """The incident edge whose far side holds the disk center.

    Meaningful only for an obtuse defining triple: the center then lies
    strictly beyond exactly one of the three diagram edges meeting at
    the triple's circumcenter, on the side of that edge's pair midpoint.
    Decided exactly; the midpoint cannot coincide with the circumcenter
    here because that would make the triple right-angled.
    """
    ia, ib, ic = triple
    cx, cy = circumcenter_exact(hull[ia], hull[ib], hull[ic])
    survivor = None
    for i, j, k in ((ia, ib, ic), (ib, ic, ia), (ia, ic, ib)):
        p, q, r = hull[i], hull[j], hull[k]
        s = orientation(p, q, r)
        px, py = Fraction(p[0]), Fraction(p[1])
        qx, qy = Fraction(q[0]), Fraction(q[1])
        # Along the p/q bisector, away from where r dominates.
        dx, dy = -s * (qy - py), s * (qx - px)
        val = dx * ((px + qx) / 2 - cx) + dy * ((py + qy) / 2 - cy)
        if val > 0:
            if survivor is not None:
                raise InconsistentOracle("two center-side edges at one vertex")
            survivor = (i, j)
    if survivor is None:
        raise InconsistentOracle("no center-side edge at an obtuse vertex")
    return survivor


def sed_of_prepared(ps: PreparedSet, stats=None) -> Disk:
    hull = ps.hull
    h = len(hull)
    if h == 0:
        raise EmptyQuery("no points")
    if h == 1:
        return Disk((hull[0][0], hull[0][1]), 0.0)
    if h == 2:
        return disk_from_pair(hull[0], hull[1])

    fp = ps.fpvd

    def oracle(vid):
        if stats is not None:
            stats.oracle_calls += 1
        tri = fp.vertices[vid].triple
        pa, pb, pc = hull[tri[0]], hull[tri[1]], hull[tri[2]]
        if non_obtuse(pa, pb, pc):
            return Success(vid)
        return Descend(center_side_pair(hull, tri))

    res = ps.ctree.search(oracle, pairs_of=lambda vid: fp.vertices[vid].pairs)
    if stats is not None:
        stats.searches += 1
    if res.kind == "success":
        ia, ib, ic = fp.vertices[res.payload].triple
        return disk_from_triple(hull[ia], hull[ib], hull[ic])
    if res.kind == "edge":
        return disk_from_pair(hull[res.payload[0]], hull[res.payload[1]])
    raise InconsistentOracle("single-set search aborted")


def sed_points(points, stats=None) -> Disk:
    """Smallest enclosing disk of raw points (raises EmptyQuery on none)."""
    pts = list(points)
    if not pts:
        raise EmptyQuery("no points given")
    return sed_of_prepared(PreparedSet.from_points(pts), stats)
