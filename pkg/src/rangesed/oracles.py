"""Reference implementations used to cross-check the fast structures.

Everything here favors clarity over asymptotics: smallest enclosing
disks by randomized incremental construction over explicit point
lists, farthest-point diagrams by testing all O(h^4) triple/point
combinations, and the set-based disk recursions evaluated directly
from their definitions.
"""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from .errors import GeometryError, TooLarge
from .fpvd import Fpvd, FpvdEdge, FpvdVertex, build_fpvd
from .geom import Disk, circle_side_sos, circumcenter, dist_sq, perp_cw

_WELZL_EPS = 3e-14
_ICC = (10.0 + 96.0 * 2.0**-53) * 2.0**-53
_BRUTE_MAX = 64


# ---------------------------------------------------------------------------
# Smallest enclosing disk of explicit points (Welzl, move-to-front).
# ---------------------------------------------------------------------------


def _covers(d: Disk, p) -> bool:
    dx = p[0] - d.center[0]
    dy = p[1] - d.center[1]
    return dx * dx + dy * dy <= d.radius_sq * (1.0 + _WELZL_EPS)


def _pair_disk(p, q) -> Disk:
    cx = (p[0] + q[0]) / 2.0
    cy = (p[1] + q[1]) / 2.0
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return Disk((cx, cy), (dx * dx + dy * dy) / 4.0)


def _circumdisk(a, b, c) -> Disk | None:
    bx = b[0] - a[0]
    by = b[1] - a[1]
    cx = c[0] - a[0]
    cy = c[1] - a[1]
    d = 2.0 * (bx * cy - by * cx)
    if d == 0.0:
        return None
    bl = bx * bx + by * by
    cl = cx * cx + cy * cy
    ox = a[0] + (cy * bl - by * cl) / d
    oy = a[1] + (bx * cl - cx * bl) / d
    r2 = max(
        (ox - a[0]) ** 2 + (oy - a[1]) ** 2,
        (ox - b[0]) ** 2 + (oy - b[1]) ** 2,
        (ox - c[0]) ** 2 + (oy - c[1]) ** 2,
    )
    return Disk((ox, oy), r2)


def _two_boundary(pts, p, q) -> Disk:
    circ = _pair_disk(p, q)
    px, py = p[0], p[1]
    ex = q[0] - px
    ey = q[1] - py
    left = None
    left_key = 0.0
    right = None
    right_key = 0.0
    for r in pts:
        if _covers(circ, r):
            continue
        cross = ex * (r[1] - py) - ey * (r[0] - px)
        c = _circumdisk(p, q, r)
        if c is None:
            continue
        ckey = ex * (c.center[1] - py) - ey * (c.center[0] - px)
        if cross > 0.0 and (left is None or ckey > left_key):
            left, left_key = c, ckey
        elif cross < 0.0 and (right is None or ckey < right_key):
            right, right_key = c, ckey
    if left is None:
        return circ if right is None else right
    if right is None:
        return left
    return left if left.radius_sq <= right.radius_sq else right


def _one_boundary(pts, p) -> Disk:
    d = Disk((p[0], p[1]), 0.0)
    for i, q in enumerate(pts):
        if not _covers(d, q):
            if d.radius_sq == 0.0:
                d = _pair_disk(p, q)
            else:
                d = _two_boundary(pts[: i + 1], p, q)
    return d


def welzl(points, seed: int = 0) -> Disk | None:
    """Smallest enclosing disk of the points, None when there are none."""
    pts = [(float(p[0]), float(p[1])) for p in points]
    if not pts:
        return None
    random.Random(seed).shuffle(pts)
    d = None
    for i, p in enumerate(pts):
        if d is None or not _covers(d, p):
            d = _one_boundary(pts[: i + 1], p)
    return d


# ---------------------------------------------------------------------------
# Farthest-point diagram by exhaustive triple checking.
# ---------------------------------------------------------------------------


def brute_fpvd(hull, max_size: int = _BRUTE_MAX) -> Fpvd:
    """Diagram built by testing every triple against every point.

    A triple survives when no other hull point falls strictly outside
    its circumcircle, with the same symbolic tie rule as the fast
    construction.  Float determinant signs are trusted only outside
    their error bound; anything closer is re-evaluated exactly.
    """
    h = len(hull)
    if h > max_size:
        raise TooLarge(f"brute diagram limited to {max_size} points")
    if h <= 2:
        return build_fpvd(hull)

    P = np.array([(p.x, p.y) for p in hull], dtype=np.float64)
    xs = P[:, 0]
    ys = P[:, 1]
    kept = []
    for i, j, k in combinations(range(h), 3):
        adx = P[i, 0] - xs
        ady = P[i, 1] - ys
        bdx = P[j, 0] - xs
        bdy = P[j, 1] - ys
        cdx = P[k, 0] - xs
        cdy = P[k, 1] - ys
        alift = adx * adx + ady * ady
        blift = bdx * bdx + bdy * bdy
        clift = cdx * cdx + cdy * cdy
        t_a = bdx * cdy - cdx * bdy
        t_b = cdx * ady - adx * cdy
        t_c = adx * bdy - bdx * ady
        det = alift * t_a + blift * t_b + clift * t_c
        perm = (
            alift * (np.abs(bdx * cdy) + np.abs(cdx * bdy))
            + blift * (np.abs(cdx * ady) + np.abs(adx * cdy))
            + clift * (np.abs(adx * bdy) + np.abs(bdx * ady))
        )
        bound = _ICC * perm
        # ascending hull indices wind clockwise, so det > 0 means outside
        det[i] = det[j] = det[k] = -1.0
        bound[i] = bound[j] = bound[k] = 0.0
        if np.any(det > bound):
            continue
        ok = True
        for m in np.flatnonzero(np.abs(det) <= bound):
            if circle_side_sos(hull[i], hull[j], hull[k], hull[int(m)]) == 1:
                ok = False
                break
        if ok:
            kept.append((i, j, k))

    if len(kept) != h - 2:
        raise GeometryError("exhaustive triple filter did not yield h-2 faces")

    verts = []
    by_pair = {}
    for vid, (i, j, k) in enumerate(kept):
        pos = circumcenter(hull[i], hull[j], hull[k])
        prs = ((i, j), (j, k), (i, k))
        verts.append(FpvdVertex(pos, (i, j, k), prs))
        for pr in prs:
            by_pair.setdefault(pr, []).append(vid)

    edges = {}
    for pr in sorted(by_pair):
        vids = tuple(by_pair[pr])
        if len(vids) == 2:
            edges[pr] = FpvdEdge(pr, vids, ())
            continue
        if len(vids) != 1:
            raise GeometryError("pair shared by more than two faces")
        a, b = pr
        if b == a + 1:
            ev = (hull[b].x - hull[a].x, hull[b].y - hull[a].y)
        elif (a, b) == (0, h - 1):
            ev = (hull[0].x - hull[h - 1].x, hull[0].y - hull[h - 1].y)
        else:
            raise GeometryError("boundary pair is not a hull side")
        edges[pr] = FpvdEdge(pr, vids, ((verts[vids[0]].pos, perp_cw(ev)),))

    cells = {i: [] for i in range(h)}
    for pr in edges:
        cells[pr[0]].append(pr)
        cells[pr[1]].append(pr)
    for i, prs in cells.items():
        prs.sort(key=lambda pr: ((pr[0] + pr[1] - i) - i) % h)
    return Fpvd(hull, verts, edges, cells)


# ---------------------------------------------------------------------------
# Smallest disks over families of sets, straight from the definitions.
# ---------------------------------------------------------------------------


class Undefined:
    """Sentinel for set recursions that reach a subproblem with no disk."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"


UNDEFINED = Undefined()

_COVER_TOL = 1e-12


def _covers_all(d: Disk, pts) -> bool:
    slack = d.radius_sq * _COVER_TOL + 1e-30
    return all(dist_sq(d.center, p) <= d.radius_sq + slack for p in pts)


def fcases(s_sets, r_sets):
    """All selections of at most three sets whose pooled disk covers everything.

    Every selection must include each member of r_sets.  Returns a list
    of (chosen_s_indices, disk) entries; an empty list means the
    combined disk for this configuration does not exist.
    """
    if len(r_sets) > 3:
        raise ValueError("at most three boundary sets")
    all_pts = [p for s in s_sets for p in s] + [p for r in r_sets for p in r]
    r_pool = [p for r in r_sets for p in r]
    out = []
    budget = 3 - len(r_sets)
    for size in range(0, budget + 1):
        for combo in combinations(range(len(s_sets)), size):
            pool = r_pool + [p for i in combo for p in s_sets[i]]
            if not pool:
                continue
            d = welzl(pool)
            if d is not None and _covers_all(d, all_pts):
                out.append((combo, d))
    return out


def smd(s_sets, r_sets):
    """The common disk of the feasible selections, or UNDEFINED."""
    cases = fcases(s_sets, r_sets)
    if not cases:
        return UNDEFINED
    return cases[0][1]


def set_minidisk(s_sets, r_sets=(), seed: int = 0, *, draw=None, trace=None):
    """Welzl's recursion lifted to whole sets, evaluated naively.

    This procedure is not always well defined: a subproblem may have no
    feasible selection at all, in which case UNDEFINED is returned.
    `draw` overrides the random choice; it receives the original
    indices of the still-active sets and must return one of them.
    `trace`, when given, collects (s_indices, r_indices) per call.
    """
    rng = random.Random(seed)
    sets = list(s_sets)

    def rec(s_idx, r_idx):
        if not s_idx and not r_idx:
            return None  # null disk of the empty problem, covers nothing
        if trace is not None:
            trace.append((tuple(s_idx), tuple(r_idx)))
        cur = smd([sets[i] for i in s_idx], [sets[i] for i in r_idx])
        if cur is UNDEFINED:
            return UNDEFINED
        if len(r_idx) == 3 or not s_idx:
            return welzl([p for i in r_idx for p in sets[i]])
        pick = draw(list(s_idx)) if draw is not None else rng.choice(s_idx)
        rest = [i for i in s_idx if i != pick]
        d = rec(rest, r_idx)
        if d is UNDEFINED:
            return UNDEFINED
        if d is None or not _covers_all(d, sets[pick]):
            d = rec(rest, r_idx + [pick])
        return d

    base = len(sets)
    sets.extend(r_sets)
    return rec(list(range(base)), list(range(base, len(sets))))
