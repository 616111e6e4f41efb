"""Farthest-point Voronoi diagrams of planar point sets.

The diagram of h hull points (h >= 3) has h - 2 vertices and 2h - 3
edges, of which the h edges between hull-adjacent cells are unbounded
rays.  It is built by dualizing the farthest-point Delaunay
triangulation, which is constructed incrementally in expected O(h)
time: vertices are deleted from the polygon in random order and
re-inserted in reverse, legalizing with flips.  Ties among co-circular
points are broken symbolically (see circle_side_sos), so the output is
a pure function of the input points, not of the insertion order.

Exact ties are also honored during point location: each diagram vertex
carries a "frame" that answers sector queries with a floating point
filter backed by rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .centroid import CentroidTree, Descend, Success
from .errors import CollinearInput, GeometryError
from .geom import (
    Point,
    circle_side_sos,
    circumcenter,
    cmp_dist_sq,
    orientation,
    perp_cw,
)
from .hull import build_hull

_BUILD_SEED = 7
_SIGN_ERR = 128.0 * 2.0**-53
_SCAN_MAX = 32
_ROLES = ("a", "b", "c", "w")


@dataclass(frozen=True)
class FpvdVertex:
    pos: tuple[float, float]
    triple: tuple[int, int, int]  # ascending hull indices (clockwise)
    pairs: tuple[tuple[int, int], ...]  # incident edges, ((a,b),(b,c),(a,c))


@dataclass(frozen=True)
class FpvdEdge:
    pair: tuple[int, int]  # hull indices of the two cells, a < b
    vs: tuple[int, ...]  # endpoint vertex ids (0..2 of them)
    rays: tuple[tuple[tuple[float, float], tuple[float, float]], ...]
    # each ray is (anchor, direction); directions are not normalized

    @property
    def bounded(self) -> bool:
        return len(self.vs) == 2


def _fpdt_triangles(hull, seed):
    """Ascending index triples of the farthest-point Delaunay triangulation."""
    h = len(hull)
    nxt = list(range(1, h)) + [0]
    prv = [h - 1] + list(range(h - 1))
    order = list(range(h))
    random.Random(seed).shuffle(order)

    removed_info = []
    gone = [False] * h
    alive = h
    for v in order:
        if alive == 3:
            break
        a, b = prv[v], nxt[v]
        removed_info.append((v, a, b))
        gone[v] = True
        nxt[a] = b
        prv[b] = a
        alive -= 1

    i0, i1, i2 = (v for v in range(h) if not gone[v])
    # Ascending hull indices run clockwise, matching the CW hull.
    apex = {(i0, i1): i2, (i1, i2): i0, (i2, i0): i1}

    for v, a, b in reversed(removed_info):
        apex[(a, v)] = b
        apex[(v, b)] = a
        apex[(b, a)] = v
        stack = [(a, b)]
        while stack:
            x, y = stack.pop()
            if apex.get((x, y)) != v:
                x, y = y, x
                if apex.get((x, y)) != v:
                    continue  # stale entry, edge already flipped away
            z = apex.get((y, x))
            if z is None:
                continue
            if circle_side_sos(hull[x], hull[y], hull[v], hull[z]) == 1:
                del apex[(x, y)]
                del apex[(y, x)]
                apex[(x, z)] = v
                apex[(z, v)] = x
                apex[(v, x)] = z
                apex[(y, v)] = z
                apex[(v, z)] = y
                apex[(z, y)] = v
                stack.append((x, z))
                stack.append((z, y))

    triples = {tuple(sorted((u, w, t))) for (u, w), t in apex.items()}
    if len(triples) != h - 2:
        raise GeometryError("triangulation lost triangles")
    return sorted(triples)


class Fpvd:
    def __init__(self, hull, vertices, edges, cells):
        self.hull = hull
        self.vertices = vertices
        self.edges = edges  # pair -> FpvdEdge
        self.cells = cells  # hull index -> [pair, ...] by partner offset
        self._frames = {}
        self._adj = None

    @property
    def h(self) -> int:
        return len(self.hull)

    def cell_pairs(self, i):
        return self.cells[i]

    def cell_edges(self, i):
        return [self.edges[p] for p in self.cells[i]]

    def adjacency(self):
        """Vertex adjacency over bounded edges (a tree)."""
        if self._adj is None:
            adj = [[] for _ in self.vertices]
            for pair, e in self.edges.items():
                if len(e.vs) == 2:
                    u, w = e.vs
                    adj[u].append((pair, w))
                    adj[w].append((pair, u))
            self._adj = adj
        return self._adj

    def frame(self, vid):
        fr = self._frames.get(vid)
        if fr is None:
            i, j, k = self.vertices[vid].triple
            fr = _Frame(self.hull[i], self.hull[j], self.hull[k])
            self._frames[vid] = fr
        return fr

    def sector(self, vid, q):
        """Sector of q around vertex vid; see _Frame.decide."""
        return self.frame(vid).decide(q[0], q[1])


def build_fpvd(hull, seed: int = _BUILD_SEED) -> Fpvd:
    """Diagram of a strictly convex clockwise hull (any size >= 1)."""
    h = len(hull)
    if h == 0:
        raise ValueError("empty hull")
    if h == 1:
        return Fpvd(hull, [], {}, {0: []})
    if h == 2:
        p0, p1 = hull
        mid = ((p0.x + p1.x) / 2.0, (p0.y + p1.y) / 2.0)
        d = perp_cw((p1.x - p0.x, p1.y - p0.y))
        e = FpvdEdge((0, 1), (), ((mid, d), (mid, (-d[0], -d[1]))))
        return Fpvd(hull, [], {(0, 1): e}, {0: [(0, 1)], 1: [(0, 1)]})

    triples = _fpdt_triangles(hull, seed)
    vertices = []
    edge_vids = {}
    for vid, (i, j, k) in enumerate(triples):
        pos = circumcenter(hull[i], hull[j], hull[k])
        pairs = ((i, j), (j, k), (i, k))
        vertices.append(FpvdVertex(pos, (i, j, k), pairs))
        for pr in pairs:
            edge_vids.setdefault(pr, []).append(vid)

    edges = {}
    for pair in sorted(edge_vids):
        vids = edge_vids[pair]
        a, b = pair
        if len(vids) == 2:
            edges[pair] = FpvdEdge(pair, tuple(vids), ())
        elif len(vids) == 1:
            if b == a + 1:
                ev = (hull[b].x - hull[a].x, hull[b].y - hull[a].y)
            elif (a, b) == (0, h - 1):
                ev = (hull[0].x - hull[b].x, hull[0].y - hull[b].y)
            else:
                raise GeometryError("single-triangle edge is not a hull side")
            anchor = vertices[vids[0]].pos
            edges[pair] = FpvdEdge(pair, tuple(vids), ((anchor, perp_cw(ev)),))
        else:
            raise GeometryError("edge shared by more than two triangles")

    if len(edges) != 2 * h - 3:
        raise GeometryError("wrong edge count")
    if sum(1 for e in edges.values() if not e.bounded) != h:
        raise GeometryError("wrong unbounded edge count")

    cells = {i: [] for i in range(h)}
    for pair in edges:
        a, b = pair
        cells[a].append(pair)
        cells[b].append(pair)
    for i, prs in cells.items():
        prs.sort(key=lambda pr: ((pr[0] + pr[1] - i) - i) % h)
    return Fpvd(hull, vertices, edges, cells)


# ---------------------------------------------------------------------------
# Sector classification around a diagram vertex.
#
# Let w be the circumcenter of the vertex triple (p_a, p_b, p_c).  The
# three rays from w with directions u_k = w - p_k lie strictly inside
# the respective farthest-point cells and split the plane into three
# sectors; the whole subtree of the diagram hanging off the edge
# between cells a and b lies in the sector delimited by u_a and u_b.
# Classifying q against these rays therefore drives both point
# location and the disk searches.
#
# With d = 2 * cross(p_b - p_a, p_c - p_a) and num the circumcenter
# offset numerator (w = p_a + num / d), every needed direction is a
# polynomial vector divided by d:
#     u_a = num / d,   u_b = (num - d*(p_b - p_a)) / d,
#     u_c analogous,   q - w = (d*(q - p_a) - num) / d,
# so all sign tests reduce to polynomial signs plus sign(d).
# ---------------------------------------------------------------------------


def _sector_from_signs(sgn_d, comp, cross):
    halves = {}
    for r in _ROLES:
        sx = comp[r, "x"] * sgn_d
        sy = comp[r, "y"] * sgn_d
        halves[r] = 0 if (sy > 0 or (sy == 0 and sx > 0)) else 1

    def before(r1, r2):
        if halves[r1] != halves[r2]:
            return halves[r1] < halves[r2]
        cr = cross[r1, r2]
        if cr == 0:
            raise GeometryError("coincident directions in sector sort")
        return cr > 0

    order = []
    for r in _ROLES:
        pos = 0
        while pos < len(order) and not before(r, order[pos]):
            pos += 1
        order.insert(pos, r)
    idx = order.index("w")
    prev_r = order[idx - 1]
    next_r = order[(idx + 1) % 4]
    return ("sector", tuple(sorted((prev_r, next_r))))


class _Frame:
    """Per-vertex data for exact sector tests, filter first."""

    __slots__ = (
        "pa", "pb", "pc", "sgn_d",
        "d", "numx", "numy", "vbx", "vby", "vcx", "vcy",
        "m_d", "m_numx", "m_numy", "m_vbx", "m_vby", "m_vcx", "m_vcy",
        "_exact",
    )

    def __init__(self, pa, pb, pc):
        self.pa, self.pb, self.pc = pa, pb, pc
        self.sgn_d = orientation(pa, pb, pc)
        if self.sgn_d == 0:
            raise CollinearInput("vertex frame of collinear triple")
        bx = pb[0] - pa[0]
        by = pb[1] - pa[1]
        cx = pc[0] - pa[0]
        cy = pc[1] - pa[1]
        bl = bx * bx + by * by
        cl = cx * cx + cy * cy
        self.d = 2.0 * (bx * cy - by * cx)
        self.m_d = 2.0 * (abs(bx * cy) + abs(by * cx))
        self.numx = cy * bl - by * cl
        self.m_numx = abs(cy) * bl + abs(by) * cl
        self.numy = bx * cl - cx * bl
        self.m_numy = abs(bx) * cl + abs(cx) * bl
        self.vbx = self.numx - self.d * bx
        self.m_vbx = self.m_numx + self.m_d * abs(bx)
        self.vby = self.numy - self.d * by
        self.m_vby = self.m_numy + self.m_d * abs(by)
        self.vcx = self.numx - self.d * cx
        self.m_vcx = self.m_numx + self.m_d * abs(cx)
        self.vcy = self.numy - self.d * cy
        self.m_vcy = self.m_numy + self.m_d * abs(cy)
        self._exact = None

    def decide(self, qx, qy):
        """('vertex', None) | ('ray', role) | ('sector', (role, role))."""
        xx = qx - self.pa[0]
        xy = qy - self.pa[1]
        wx = self.d * xx - self.numx
        m_wx = self.m_d * abs(xx) + self.m_numx
        wy = self.d * xy - self.numy
        m_wy = self.m_d * abs(xy) + self.m_numy

        numx, numy, vbx, vby = self.numx, self.numy, self.vbx, self.vby
        vcx, vcy = self.vcx, self.vcy
        m_numx, m_numy = self.m_numx, self.m_numy
        m_vbx, m_vby, m_vcx, m_vcy = self.m_vbx, self.m_vby, self.m_vcx, self.m_vcy

        c_ab = numx * vby - numy * vbx
        m_ab = m_numx * m_vby + m_numy * m_vbx
        c_ac = numx * vcy - numy * vcx
        m_ac = m_numx * m_vcy + m_numy * m_vcx
        c_bc = vbx * vcy - vby * vcx
        m_bc = m_vbx * m_vcy + m_vby * m_vcx
        c_aw = numx * wy - numy * wx
        m_aw = m_numx * m_wy + m_numy * m_wx
        c_bw = vbx * wy - vby * wx
        m_bw = m_vbx * m_wy + m_vby * m_wx
        c_cw = vcx * wy - vcy * wx
        m_cw = m_vcx * m_wy + m_vcy * m_wx

        err = _SIGN_ERR
        for v, m in (
            (numx, m_numx), (numy, m_numy), (vbx, m_vbx), (vby, m_vby),
            (vcx, m_vcx), (vcy, m_vcy), (wx, m_wx), (wy, m_wy),
            (c_ab, m_ab), (c_ac, m_ac), (c_bc, m_bc),
            (c_aw, m_aw), (c_bw, m_bw), (c_cw, m_cw),
        ):
            if abs(v) <= err * m:
                return self._decide_exact(qx, qy)

        comp = {
            ("a", "x"): 1 if numx > 0 else -1,
            ("a", "y"): 1 if numy > 0 else -1,
            ("b", "x"): 1 if vbx > 0 else -1,
            ("b", "y"): 1 if vby > 0 else -1,
            ("c", "x"): 1 if vcx > 0 else -1,
            ("c", "y"): 1 if vcy > 0 else -1,
            ("w", "x"): 1 if wx > 0 else -1,
            ("w", "y"): 1 if wy > 0 else -1,
        }
        cross = {}
        for key, v in (
            (("a", "b"), c_ab), (("a", "c"), c_ac), (("b", "c"), c_bc),
            (("a", "w"), c_aw), (("b", "w"), c_bw), (("c", "w"), c_cw),
        ):
            s = 1 if v > 0 else -1
            cross[key] = s
            cross[key[1], key[0]] = -s
        return _sector_from_signs(self.sgn_d, comp, cross)

    def _exact_parts(self):
        if self._exact is None:
            ax, ay = Fraction(self.pa[0]), Fraction(self.pa[1])
            bx = Fraction(self.pb[0]) - ax
            by = Fraction(self.pb[1]) - ay
            cx = Fraction(self.pc[0]) - ax
            cy = Fraction(self.pc[1]) - ay
            bl = bx * bx + by * by
            cl = cx * cx + cy * cy
            d = 2 * (bx * cy - by * cx)
            numx = cy * bl - by * cl
            numy = bx * cl - cx * bl
            va = (numx, numy)
            vb = (numx - d * bx, numy - d * by)
            vc = (numx - d * cx, numy - d * cy)
            self._exact = (ax, ay, d, va, vb, vc)
        return self._exact

    def _decide_exact(self, qx, qy):
        ax, ay, d, va, vb, vc = self._exact_parts()
        xx = Fraction(qx) - ax
        xy = Fraction(qy) - ay
        w = (d * xx - va[0], d * xy - va[1])
        if w[0] == 0 and w[1] == 0:
            return ("vertex", None)
        vecs = (("a", va), ("b", vb), ("c", vc))
        for role, v in vecs:
            if v[0] * w[1] - v[1] * w[0] == 0 and v[0] * w[0] + v[1] * w[1] > 0:
                return ("ray", role)
        comp = {}
        cross = {}
        items = vecs + (("w", w),)
        for idx, (r1, v1) in enumerate(items):
            comp[r1, "x"] = _fsign(v1[0])
            comp[r1, "y"] = _fsign(v1[1])
            for r2, v2 in items[idx + 1 :]:
                s = _fsign(v1[0] * v2[1] - v1[1] * v2[0])
                cross[r1, r2] = s
                cross[r2, r1] = -s
        return _sector_from_signs(self.sgn_d, comp, cross)


def _fsign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def fpvd_sector(pa, pb, pc, q):
    """Sector of q around the circumcenter of (pa, pb, pc); test hook."""
    return _Frame(pa, pb, pc).decide(q[0], q[1])


class PreparedSet:
    """A point set with its hull, diagram and centroid tree, built lazily."""

    def __init__(self, points, hull=None):
        self.points = list(points)
        self._hull = hull
        self._fpvd = None
        self._ctree = None
        self._ctree_built = False

    @classmethod
    def from_points(cls, raw):
        pts = []
        seen = {}
        for i, p in enumerate(raw):
            pt = p if isinstance(p, Point) else Point(float(p[0]), float(p[1]), i)
            key = (pt.x, pt.y)
            if key not in seen:
                seen[key] = pt
                pts.append(pt)
        return cls(pts)

    @property
    def hull(self):
        if self._hull is None:
            self._hull = build_hull(self.points)
        return self._hull

    @property
    def fpvd(self) -> Fpvd:
        if self._fpvd is None:
            self._fpvd = build_fpvd(self.hull)
        return self._fpvd

    @property
    def ctree(self):
        if not self._ctree_built:
            fp = self.fpvd
            if fp.vertices:
                self._ctree = CentroidTree.build(len(fp.vertices), fp.adjacency())
            self._ctree_built = True
        return self._ctree

    def locate_farthest(self, q, stats=None, method="auto"):
        """The point of the set farthest from q, ties to the smallest id."""
        hull = self.hull
        h = len(hull)
        if h == 0:
            raise ValueError("empty set")
        if method == "auto":
            method = "scan" if h <= _SCAN_MAX else "descend"
        if h <= 2 or method == "scan":
            if stats is not None:
                stats.dist_comparisons += h - 1
            best = hull[0]
            for p in hull[1:]:
                c = cmp_dist_sq(q, p, best)
                if c > 0 or (c == 0 and p.id < best.id):
                    best = p
            return best

        fp = self.fpvd
        qx, qy = q[0], q[1]

        def oracle(vid):
            vert = fp.vertices[vid]
            kind, payload = fp.sector(vid, (qx, qy))
            if kind == "vertex":
                i, j, k = vert.triple
                return Success(min((hull[i], hull[j], hull[k]), key=lambda p: p.id))
            if kind == "ray":
                return Success(hull[vert.triple[_ROLES.index(payload)]])
            i = vert.triple[_ROLES.index(payload[0])]
            j = vert.triple[_ROLES.index(payload[1])]
            return Descend((i, j) if i < j else (j, i))

        res = self.ctree.search(oracle, pairs_of=lambda vid: fp.vertices[vid].pairs)
        if stats is not None:
            stats.dist_comparisons += res.calls
        if res.kind == "success":
            return res.payload
        pi, pj = hull[res.payload[0]], hull[res.payload[1]]
        c = cmp_dist_sq(q, pi, pj)
        if stats is not None:
            stats.dist_comparisons += 1
        if c > 0 or (c == 0 and pi.id < pj.id):
            return pi
        return pj
