"""Exact planar predicates and disk primitives.

All predicates run a cheap floating-point filter first and fall back to
exact rational arithmetic (floats are dyadic, so Fraction conversion is
lossless) only when the filter cannot certify the sign.  Positions are
(x, y) tuples; Point instances are valid positions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import CollinearInput, GeometryError

DEFAULT_TOL = 1e-9

# Shewchuk's stage-A filter constants for IEEE double.
_EPS = 2.0 ** -53
_CCW_ERR = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERR = (10.0 + 96.0 * _EPS) * _EPS
# Home-grown conservative bounds for distance / dot filters (see tests).
_DIST_ERR = 8.0 * _EPS
_DOT_ERR = 8.0 * _EPS


class Point(NamedTuple):
    x: float
    y: float
    id: int


class Disk(NamedTuple):
    """A closed disk; the radius is kept squared until output time."""

    center: tuple[float, float]
    radius_sq: float

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def dist_sq(p, q) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def perp_ccw(v):
    """Rotate a vector 90 degrees counterclockwise."""
    return (-v[1], v[0])


def perp_cw(v):
    """Rotate a vector 90 degrees clockwise."""
    return (v[1], -v[0])


def orientation(a, b, c) -> int:
    """Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise."""
    detleft = (b[0] - a[0]) * (c[1] - a[1])
    detright = (b[1] - a[1]) * (c[0] - a[0])
    det = detleft - detright
    bound = _CCW_ERR * (abs(detleft) + abs(detright))
    if det > bound or -det > bound:
        return 1 if det > 0 else -1
    return _orientation_exact(a, b, c)


def _orientation_exact(a, b, c) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    det = (Fraction(b[0]) - ax) * (Fraction(c[1]) - ay) - (
        Fraction(b[1]) - ay
    ) * (Fraction(c[0]) - ax)
    return sign(det)


def cmp_dist_sq(q, a, b) -> int:
    """Sign of dist(q, a)^2 - dist(q, b)^2: +1 when a is farther from q."""
    d1 = dist_sq(q, a)
    d2 = dist_sq(q, b)
    diff = d1 - d2
    if abs(diff) > _DIST_ERR * (d1 + d2):
        return 1 if diff > 0 else -1
    qx, qy = Fraction(q[0]), Fraction(q[1])
    e1 = (Fraction(a[0]) - qx) ** 2 + (Fraction(a[1]) - qy) ** 2
    e2 = (Fraction(b[0]) - qx) ** 2 + (Fraction(b[1]) - qy) ** 2
    return sign(e1 - e2)


def dot_sign(o, p, q) -> int:
    """Sign of dot(p - o, q - o)."""
    t1 = (p[0] - o[0]) * (q[0] - o[0])
    t2 = (p[1] - o[1]) * (q[1] - o[1])
    dot = t1 + t2
    if abs(dot) > _DOT_ERR * (abs(t1) + abs(t2)):
        return 1 if dot > 0 else -1
    ox, oy = Fraction(o[0]), Fraction(o[1])
    e = (Fraction(p[0]) - ox) * (Fraction(q[0]) - ox) + (
        Fraction(p[1]) - oy
    ) * (Fraction(q[1]) - oy)
    return sign(e)


def _incircle_det(a, b, c, q):
    """Float incircle determinant and its stage-A error bound."""
    adx = a[0] - q[0]
    ady = a[1] - q[1]
    bdx = b[0] - q[0]
    bdy = b[1] - q[1]
    cdx = c[0] - q[0]
    cdy = c[1] - q[1]

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady
    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    return det, _ICC_ERR * permanent


def _incircle_exact(a, b, c, q) -> int:
    """Sign of the exact incircle determinant (positive: q inside, given ccw abc)."""
    qx, qy = Fraction(q[0]), Fraction(q[1])
    rows = []
    for p in (a, b, c):
        dx = Fraction(p[0]) - qx
        dy = Fraction(p[1]) - qy
        rows.append((dx, dy, dx * dx + dy * dy))
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = rows
    det = (
        a2 * (b0 * c1 - c0 * b1)
        - b2 * (a0 * c1 - c0 * a1)
        + c2 * (a0 * b1 - b0 * a1)
    )
    return sign(det)


def circle_side(a, b, c, q) -> int:
    """Side of q relative to the circle through a, b, c.

    Returns +1 strictly outside, 0 on the circle, -1 strictly inside.
    Raises CollinearInput when a, b, c do not span a circle.
    """
    o = orientation(a, b, c)
    if o == 0:
        raise CollinearInput("circle through collinear points")
    det, bound = _incircle_det(a, b, c, q)
    if det > bound or -det > bound:
        s = 1 if det > 0 else -1
    else:
        s = _incircle_exact(a, b, c, q)
    return -s * o


def circle_side_sos(a: Point, b: Point, c: Point, q: Point) -> int:
    """Like circle_side but never 0: exact ties are broken symbolically.

    Points are lifted to the paraboloid with a per-point drop that shrinks
    with the point's id rank, so the answer is a pure function of the four
    point identities and does not depend on evaluation order elsewhere.
    """
    o = orientation(a, b, c)
    if o == 0:
        raise CollinearInput("circle through collinear points")
    det, bound = _incircle_det(a, b, c, q)
    if det > bound or -det > bound:
        s = 1 if det > 0 else -1
        return -s * o
    s = _incircle_exact(a, b, c, q)
    if s != 0:
        return -s * o

    # Cofactor of each lift coordinate in the 4x4 determinant, by row.
    cof = [
        (a, lambda: _orientation_exact(b, c, q)),
        (b, lambda: -_orientation_exact(a, c, q)),
        (c, lambda: _orientation_exact(a, b, q)),
        (q, lambda: -_orientation_exact(a, b, c)),
    ]
    if len({p.id for p, _ in cof}) != 4:
        raise GeometryError("tie break needs four distinct point ids")
    for _, cfn in sorted(cof, key=lambda pc: pc[0].id):
        cs = cfn()
        if cs != 0:
            return cs * o
    raise GeometryError("degenerate incircle tie break")  # unreachable


def circumcenter(a, b, c) -> tuple[float, float]:
    """Float circumcenter; raises CollinearInput on collinear input."""
    if orientation(a, b, c) == 0:
        raise CollinearInput("circumcenter of collinear points")
    bx = b[0] - a[0]
    by = b[1] - a[1]
    cx = c[0] - a[0]
    cy = c[1] - a[1]
    d = 2.0 * (bx * cy - by * cx)
    bl = bx * bx + by * by
    cl = cx * cx + cy * cy
    ux = (cy * bl - by * cl) / d
    uy = (bx * cl - cx * bl) / d
    return (a[0] + ux, a[1] + uy)


def circumcenter_exact(a, b, c) -> tuple[Fraction, Fraction]:
    """Exact rational circumcenter of three non-collinear float points."""
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx = Fraction(b[0]) - ax
    by = Fraction(b[1]) - ay
    cx = Fraction(c[0]) - ax
    cy = Fraction(c[1]) - ay
    d = 2 * (bx * cy - by * cx)
    if d == 0:
        raise CollinearInput("circumcenter of collinear points")
    bl = bx * bx + by * by
    cl = cx * cx + cy * cy
    return (ax + (cy * bl - by * cl) / d, ay + (bx * cl - cx * bl) / d)


def non_obtuse(a, b, c) -> bool:
    """True when no interior angle of triangle abc exceeds 90 degrees.

    Right angles count as non-obtuse.  Decided exactly.
    """
    return (
        dot_sign(a, b, c) >= 0
        and dot_sign(b, a, c) >= 0
        and dot_sign(c, a, b) >= 0
    )


def disk_from_pair(a, b) -> Disk:
    """Smallest disk with a and b on the boundary (diametral disk)."""
    cx = (a[0] + b[0]) / 2.0
    cy = (a[1] + b[1]) / 2.0
    return Disk((cx, cy), dist_sq(a, b) / 4.0)


def disk_from_triple(a, b, c) -> Disk:
    """Smallest disk enclosing three points.

    Circumdisk when the triangle is non-obtuse, otherwise the diametral
    disk of the longest side.  Collinear triples fall through to the
    longest-side case as well.
    """
    collinear = orientation(a, b, c) == 0
    if not collinear and non_obtuse(a, b, c):
        ctr = circumcenter(a, b, c)
        r = max(dist_sq(ctr, a), dist_sq(ctr, b), dist_sq(ctr, c))
        return Disk(ctr, r)
    pairs = ((a, b), (a, c), (b, c))
    u, v = max(pairs, key=lambda pq: dist_sq(pq[0], pq[1]))
    return disk_from_pair(u, v)


def disk_contains(d: Disk, p, tol: float = DEFAULT_TOL) -> bool:
    """Whether p lies in d, with a relative slack of tol on the squared radius.

    tol=0 compares the stored float values exactly.
    """
    if tol == 0.0:
        dx = Fraction(p[0]) - Fraction(d.center[0])
        dy = Fraction(p[1]) - Fraction(d.center[1])
        return dx * dx + dy * dy <= Fraction(d.radius_sq)
    return dist_sq(d.center, p) <= d.radius_sq * (1.0 + tol)
