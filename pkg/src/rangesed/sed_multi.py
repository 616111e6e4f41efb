"""Smallest enclosing disk of several sets with pairwise disjoint hulls.

The hull of the union splits into clockwise arcs, one per maximal run
of consecutive vertices from a single set.  Each arc is searched on its
own set's farthest-point diagram; a search step either certifies the
current diagram vertex as the global disk center, walks toward it, or
proves the arc holds no defining point.  Every search contributes at
most two candidate points (three on direct success), and the answer is
assembled from the pooled candidates.
"""

from __future__ import annotations

from fractions import Fraction
from math import atan2, inf
from typing import NamedTuple

from .centroid import Abort, Descend, Success
from .errors import EmptyQuery, GeometryError, InconsistentOracle
from .geom import (
    circle_side,
    cmp_dist_sq,
    disk_from_pair,
    disk_from_triple,
    non_obtuse,
    orientation,
)
from .hull import _bridge, arc_slice
from .oracles import welzl
from .sed_single import center_side_pair, sed_of_prepared


class Section(NamedTuple):
    """One clockwise arc of the union hull, owned by a single set.

    lo and hi are hull indices into the owner's hull; the arc runs
    clockwise from lo to hi inclusive and may wrap.
    """

    set_idx: int
    lo: int
    hi: int


def in_arc(lo, hi, h, q) -> bool:
    return (q - lo) % h <= (hi - lo) % h


def arcs_meet(lo1, hi1, lo2, hi2, h) -> bool:
    return in_arc(lo1, hi1, h, lo2) or in_arc(lo2, hi2, h, lo1)


def _assert_no_alternation(seq):
    # No two sets may interleave as a..b..a..b around the union hull:
    # between consecutive arcs of one set, other sets appear whole.
    s = len(seq)
    owner_pos = {}
    for k, o in enumerate(seq):
        owner_pos.setdefault(o, []).append(k)
    for o, pos in owner_pos.items():
        if len(pos) < 2:
            continue
        gap_of = {}
        for g in range(len(pos)):
            lo, hi = pos[g], pos[(g + 1) % len(pos)]
            k = (lo + 1) % s
            while k != hi:
                gap_of.setdefault(seq[k], g)
                if gap_of[seq[k]] != g:
                    raise GeometryError("hull arcs of two sets interleave")
                k = (k + 1) % s


def canonical_sections(prepared):
    """Clockwise arcs of the union hull, one Section per maximal run.

    Requires pairwise disjoint hulls; raises HullsOverlap otherwise.
    Sets strictly inside the union contribute no section.
    """
    m = len(prepared)
    if m == 0:
        raise EmptyQuery("no sets")
    if m == 1:
        return [Section(0, 0, len(prepared[0].hull) - 1)]
    hulls = [ps.hull for ps in prepared]
    start = min(range(m), key=lambda i: (hulls[i][0][0], hulls[i][0][1]))

    def next_switch(c, cur):
        hc = hulls[c]
        h = len(hc)
        best = None  # (delta, depart, target set, land)
        for j in range(m):
            if j == c:
                continue
            a, b = _bridge(hulls[c], hulls[j])
            hj = hulls[j]
            nj = len(hj)
            # Snap the bridge to strict corners of the pairwise hull: a
            # vertex on the bridge line but interior to the combined
            # edge must not become a walk stop.
            while a != cur and orientation(hc[(a - 1) % h], hc[a], hj[b]) == 0:
                a = (a - 1) % h
            while (
                nj > 1
                and orientation(hc[a], hj[b], hj[(b + 1) % nj]) == 0
                and cmp_dist_sq(hc[a], hj[(b + 1) % nj], hj[b]) > 0
            ):
                b = (b + 1) % nj
            delta = (a - cur) % h
            if best is None or delta < best[0]:
                best = (delta, a, j, b)
            elif delta == best[0]:
                # Same departure vertex: keep the more clockwise landing;
                # collinear cross-set middles lose to the farther point.
                u = hc[a]
                w_new, w_old = hulls[j][b], hulls[best[2]][best[3]]
                o = orientation(u, w_old, w_new)
                if o > 0 or (o == 0 and cmp_dist_sq(u, w_new, w_old) > 0):
                    best = (delta, a, j, b)
        return best[1], best[2], best[3]

    switches = []
    seen = set()
    c, cur = start, 0
    closed = False
    for _ in range(2 * m + 2):
        a, j, b = next_switch(c, cur)
        key = (c, a, j, b)
        if key in seen:
            if key != switches[0]:
                raise GeometryError("hull walk closed off its start")
            closed = True
            break
        seen.add(key)
        switches.append(key)
        c, cur = j, b
    if not closed:
        raise GeometryError("hull walk failed to close")

    sections = []
    for k, (_, _, j, b) in enumerate(switches):
        nxt = switches[(k + 1) % len(switches)]
        if nxt[0] != j:
            raise GeometryError("hull walk lost its thread")
        sections.append(Section(j, b, nxt[1]))
    if len(sections) > 2 * m - 1:
        raise GeometryError("more hull arcs than sets allow")
    _assert_no_alternation([s.set_idx for s in sections])
    return sections


def vertex_survives(prepared, i, vert, stats=None):
    """Whether no other set reaches farther from the diagram vertex than
    its defining triple; returns (ok, offending point or None)."""
    hull = prepared[i].hull
    ia, ib, ic = vert.triple
    pa, pb, pc = hull[ia], hull[ib], hull[ic]
    for j, ps in enumerate(prepared):
        if j == i:
            continue
        far = ps.locate_farthest(vert.pos, stats)
        if stats is not None:
            stats.survival_checks += 1
        if circle_side(pa, pb, pc, far) == 1:
            return False, far
    return True, None


def _point_entry(p, v, u, q):
    """Threshold along x(t) = v + t*u past which p is at least as far as q.

    Returns (t, True) for a finite threshold, (None, True) when p
    dominates q for every t, and (None, False) when it never does.
    """
    px, py = Fraction(p[0]), Fraction(p[1])
    qx, qy = Fraction(q[0]), Fraction(q[1])
    vx, vy = Fraction(v[0]), Fraction(v[1])
    ux, uy = Fraction(u[0]), Fraction(u[1])
    a = (vx - qx) ** 2 + (vy - qy) ** 2 - (vx - px) ** 2 - (vy - py) ** 2
    b = 2 * (ux * (px - qx) + uy * (py - qy))
    if b == 0:
        return (None, a <= 0)
    if b > 0:
        # q outruns p in this direction, so p can only lose ground.
        return (None, False)
    return (a / -b, True)


def _entry_edge_descend(p, v, u, ps, stats=None):
    """Hull-index pair of a diagram edge of ps adjacent to the cell that
    contains the (implicit) point where p starts dominating ps along the
    probe line through v with direction u."""
    fp = ps.fpvd
    hull = ps.hull
    vx, vy = float(v[0]), float(v[1])
    ux, uy = float(u[0]), float(u[1])

    def oracle(w_vid):
        if stats is not None:
            stats.oracle_calls += 1
        vert = fp.vertices[w_vid]
        wx, wy = vert.pos
        tri = vert.triple
        dirs = [(wx - hull[k][0], wy - hull[k][1]) for k in tri]
        rx, ry = wx - vx, wy - vy
        lo, hi = -inf, inf
        for slot, (dx, dy) in enumerate(dirs):
            den = ux * dy - uy * dx
            if den == 0.0:
                continue
            t_line = (rx * dy - ry * dx) / den
            s_ray = (rx * uy - ry * ux) / den
            if s_ray < 0.0:
                continue
            y = (vx + t_line * ux, vy + t_line * uy)
            if stats is not None:
                stats.dist_comparisons += 1
            if cmp_dist_sq(y, hull[tri[slot]], p) > 0:
                lo = max(lo, t_line)  # p still beaten here: target is beyond
            else:
                hi = min(hi, t_line)
        if lo == -inf and hi == inf:
            tw = 0.0
        elif lo == -inf:
            tw = hi - 1.0 - abs(hi)
        elif hi == inf:
            tw = lo + 1.0 + abs(lo)
        else:
            tw = 0.5 * (lo + hi)
        zx, zy = vx + tw * ux - wx, vy + tw * uy - wy
        ang = [atan2(dy, dx) for dx, dy in dirs]
        za = atan2(zy, zx)
        order = sorted(range(3), key=lambda k: ang[k])
        sel = None
        for idx in range(3):
            k1, k2 = order[idx], order[(idx + 1) % 3]
            if idx < 2:
                inside = ang[k1] <= za < ang[k2]
            else:
                inside = za >= ang[k1] or za < ang[k2]
            if inside:
                sel = (tri[k1], tri[k2])
                break
        if sel is None:
            raise InconsistentOracle("probe point fell between sectors")
        return Descend((sel[0], sel[1]) if sel[0] < sel[1] else (sel[1], sel[0]))

    res = ps.ctree.search(oracle, pairs_of=lambda vid: fp.vertices[vid].pairs)
    if res.kind != "edge":
        raise InconsistentOracle("edge probe ended away from an edge")
    return res.payload


def _entry_against_set(p, v, u, ps, stats=None):
    """(t, q): from x(t) = v + t*u on, p is at least as far as all of ps.

    t is exact; (None, None) when p dominates ps along the whole line.
    """
    hull = ps.hull
    if len(hull) > 2 and ps.ctree is not None:
        g, hh = _entry_edge_descend(p, v, u, ps, stats)
        cands = (hull[g], hull[hh])
    else:
        cands = hull
    best_t, best_q = None, None
    for q in cands:
        t, ok = _point_entry(p, v, u, q)
        if not ok:
            raise GeometryError("probe ray never dominates a foreign set")
        if t is None:
            continue
        if best_t is None or t > best_t:
            best_t, best_q = t, q
    return best_t, best_q


def find_separating_edge(prepared, i, p, v_pos, stats=None):
    """Where the probe ray from v away from p leaves p's cell in the
    diagram of the union; returns (t, p2, u) with the crossing at
    v + t*u on the bisector of p and the foreign point p2."""
    if stats is not None:
        stats.sep_searches += 1
    u = (v_pos[0] - p[0], v_pos[1] - p[1])
    best_t, best_q = None, None
    for j, ps in enumerate(prepared):
        if j == i:
            continue
        t, q = _entry_against_set(p, v_pos, u, ps, stats)
        if t is None:
            continue
        if best_t is None or t > best_t:
            best_t, best_q = t, q
    if best_t is None:
        raise GeometryError("no separating edge along the probe ray")
    return best_t, best_q, u


def _arrow(p, p2, v, u, t):
    """Which side of the separating edge still holds defining points.

    "left": the clockwise-successor side of p is settled empty;
    "right": the predecessor side is; None: the crossing is the pair
    midpoint, i.e. the global center.  Decided exactly.
    """
    px, py = Fraction(p[0]), Fraction(p[1])
    qx, qy = Fraction(p2[0]), Fraction(p2[1])
    vx, vy = Fraction(v[0]), Fraction(v[1])
    ux, uy = Fraction(u[0]), Fraction(u[1])
    sx, sy = vx + t * ux, vy + t * uy
    # Along the bisector, perp_ccw(p - p2) points into the subtree of
    # cells owned by the clockwise-open run from p to p2.
    wx, wy = -(py - qy), px - qx
    val = wx * ((px + qx) / 2 - sx) + wy * ((py + qy) / 2 - sy)
    if val > 0:
        return "right"
    if val < 0:
        return "left"
    return None


_K3 = {
    ("l", "l", "l"): (2, 0),
    ("r", "l", "l"): (0, 1),
    ("r", "r", "l"): (1, 2),
    ("r", "r", "r"): (2, 0),
}
_K2 = {
    ("l", "l"): (2, 0),
    ("r", "l"): (0, 1),
    ("r", "r"): (1, 2),
}


def section_search(prepared, sections, sec_pos, box, stats=None):
    """Candidate defining points contributed by one union-hull arc.

    box is a one-slot list; when a search step certifies the global
    center outright, the disk is stored there and the search stops.
    """
    sec = sections[sec_pos]
    i = sec.set_idx
    ps = prepared[i]
    hull = ps.hull
    h = len(hull)
    npts = (sec.hi - sec.lo) % h + 1
    if npts <= 2:
        return arc_slice(hull, sec.lo, sec.hi)

    fp = ps.fpvd

    def arrow_for(t_idx, v_pos):
        pt = hull[t_idx]
        t, q, u = find_separating_edge(prepared, i, pt, v_pos, stats)
        a = _arrow(pt, q, v_pos, u, t)
        if a is None:
            box[0] = disk_from_pair(pt, q)
        return a

    def oracle(vid):
        if stats is not None:
            stats.oracle_calls += 1
        vert = fp.vertices[vid]
        tri = vert.triple
        pa, pb, pc = hull[tri[0]], hull[tri[1]], hull[tri[2]]
        ok, _ = vertex_survives(prepared, i, vert, stats)
        if ok:
            if non_obtuse(pa, pb, pc):
                box[0] = disk_from_triple(pa, pb, pc)
                return Success(vid)
            pair = center_side_pair(hull, tri)
            arcs = {
                (tri[0], tri[1]): (tri[0], tri[1]),
                (tri[1], tri[2]): (tri[1], tri[2]),
                (tri[0], tri[2]): (tri[2], tri[0]),
            }
            alo, ahi = arcs[pair]
            if not arcs_meet(alo, ahi, sec.lo, sec.hi, h):
                return Abort(None)
            return Descend(pair)

        # A triple point is full when it sits strictly inside the arc's
        # run, so both its hull neighbors are also union hull neighbors.
        # Membership alone is not enough: an arc covering the whole hull
        # contains every vertex, yet its two run endpoints still border
        # foreign points on the union hull.
        full = [1 <= (t - sec.lo) % h <= npts - 2 for t in tri]
        k = sum(full)

        if k == 0:
            for alo, ahi in (
                (tri[0], tri[1]),
                (tri[1], tri[2]),
                (tri[2], tri[0]),
            ):
                if in_arc(alo, ahi, h, sec.lo) and (sec.hi - sec.lo) % h <= (
                    ahi - sec.lo
                ) % h:
                    pair = (alo, ahi) if alo < ahi else (ahi, alo)
                    return Descend(pair)
            raise InconsistentOracle("arc not between defining cells")

        if k == 3:
            rot = sorted(range(3), key=lambda r: (tri[r] - sec.lo) % h)
            arrows = []
            for r in rot:
                a = arrow_for(tri[r], vert.pos)
                if a is None:
                    return Success(vid)
                arrows.append(a[0])
            edge = _K3.get(tuple(arrows))
            if edge is None:
                raise InconsistentOracle(f"impossible arrow pattern {arrows}")
            x, y = tri[rot[edge[0]]], tri[rot[edge[1]]]
            return Descend((x, y) if x < y else (y, x))

        if k == 2:
            rot = next(
                r for r in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) if full[r[0]] and full[r[1]]
            )
            arrows = []
            for r in rot[:2]:
                a = arrow_for(tri[r], vert.pos)
                if a is None:
                    return Success(vid)
                arrows.append(a[0])
            edge = _K2.get(tuple(arrows))
            if edge is None:
                raise InconsistentOracle(f"impossible arrow pattern {arrows}")
            x, y = tri[rot[edge[0]]], tri[rot[edge[1]]]
            return Descend((x, y) if x < y else (y, x))

        # k == 1: only the covered point's separating edge is informative.
        rot = next(r for r in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) if full[r[1]])
        a = arrow_for(tri[rot[1]], vert.pos)
        if a is None:
            return Success(vid)
        edge = (0, 1) if a == "left" else (1, 2)
        x, y = tri[rot[edge[0]]], tri[rot[edge[1]]]
        return Descend((x, y) if x < y else (y, x))

    res = ps.ctree.search(oracle, pairs_of=lambda vid: fp.vertices[vid].pairs)
    if stats is not None:
        stats.searches += 1
    if box[0] is not None or res.kind == "aborted":
        return []
    if res.kind == "edge":
        return [hull[res.payload[0]], hull[res.payload[1]]]
    raise InconsistentOracle("section search succeeded without a disk")


def sed_query(prepared, stats=None):
    """Smallest enclosing disk of the union of prepared sets.

    Falls back to solving over the pooled hull vertices when the arc
    decomposition or a search detects a broken precondition (counted in
    stats.fallbacks); the result is correct either way.
    """
    m = len(prepared)
    if m == 0:
        raise EmptyQuery("no sets")
    if m == 1:
        return sed_of_prepared(prepared[0], stats)
    try:
        sections = canonical_sections(prepared)
        if stats is not None:
            stats.sections += len(sections)
        box = [None]
        pool = []
        for k in range(len(sections)):
            cands = section_search(prepared, sections, k, box, stats)
            if box[0] is not None:
                return box[0]
            pool.extend(cands)
        if stats is not None:
            stats.candidate_points += len(pool)
        d = welzl(pool)
        if d is None:
            raise InconsistentOracle("every section aborted")
        return d
    except GeometryError:
        if stats is not None:
            stats.fallbacks += 1
        return welzl([q for ps in prepared for q in ps.hull])
