"""Static two-level index answering rectangle queries with canonical sets.

The index sorts the points by (x, id) and builds a merge-sort tree over
that order: level d holds the same n points, rearranged so that every
tree node's x-rank segment is sorted by (y, id).  A node of the tree is
just a triple (xlo, xhi, depth); a canonical set is such a node further
sliced to a y-rank run, so the whole structure is a handful of flat
arrays and the per-set hulls and diagrams are built lazily, only for
the sets a query actually selects.

Selection modes:

- "full": the textbook decomposition, O(log^2 n) sets partitioning the
  points inside the rectangle exactly.
- "pruned": O(log n)-ish sets that still carry every vertex of the
  hull of the rectangle's contents.  Every vertex has an empty open
  quadrant, so in each x-piece it survives either above the smaller of
  the neighbouring pieces' maxima or below the larger of their minima;
  keeping those two y-runs per piece is therefore lossless for hulls.
  The two outermost pieces, whose outward floors are vacuous, are
  pre-split ("peeled") down to single leaves so the vacuous case only
  ever keeps O(1) points per level.
"""

from __future__ import annotations

import warnings
from collections import OrderedDict
from typing import NamedTuple

import numpy as np

from .errors import EmptyInput, EmptyQuery
from .fpvd import PreparedSet
from .oracles import welzl
from .sed_multi import sed_query
from .sed_randomized import dmd_query

__all__ = ["CanonicalSet", "Rect", "RangeIndex", "sed_in_rect"]

_INF = float("inf")


class Rect(NamedTuple):
    """Closed axis-aligned rectangle [xlo, xhi] x [ylo, yhi]."""

    xlo: float
    ylo: float
    xhi: float
    yhi: float

    @property
    def well_formed(self) -> bool:
        return self.xlo <= self.xhi and self.ylo <= self.yhi


class CanonicalSet(NamedTuple):
    """One selected set: an x-node of the tree sliced to a y-rank run."""

    xlo: int
    xhi: int
    depth: int
    ya: int  # absolute offsets into the depth's level arrays,
    yb: int  # xlo <= ya <= yb <= xhi

    @property
    def count(self) -> int:
        return self.yb - self.ya


class RangeIndex:
    """Immutable index over a planar point set; see the module docstring."""

    def __init__(self, points, cache_size=1024):
        pts = []
        seen = set()
        dropped = 0
        for p in points:
            key = (float(p[0]), float(p[1]))
            if key in seen:
                dropped += 1
                continue
            seen.add(key)
            pts.append(key)
        if not pts:
            raise EmptyInput("no points to index")
        if dropped:
            warnings.warn(f"collapsed {dropped} duplicate point(s)", stacklevel=2)

        self._pts = pts
        n = self.n = len(pts)
        arr = np.asarray(pts, dtype=np.float64)
        ids = np.arange(n)
        xorder = np.lexsort((ids, arr[:, 0]))
        self._xorder = xorder.astype(np.int64)
        self._xs = arr[xorder, 0]
        ys_x = arr[xorder, 1]

        # Level 0 is the root segment [0, n) sorted by (y, id); each
        # deeper level re-sorts by x-rank within the halved segments,
        # which keeps every segment y-sorted because the split of a
        # sorted sequence is stable.
        depth = 1
        while (1 << (depth - 1)) < n:
            depth += 1
        perm = np.lexsort((xorder, ys_x))
        ranks0 = perm.astype(np.int64)
        self._ranks = [ranks0]
        self._ys = [ys_x[ranks0]]
        for d in range(1, depth):
            self._ranks.append(self._ranks[d - 1].copy())
            self._ys.append(self._ys[d - 1].copy())

        def split(lo, hi, d):
            if hi - lo <= 1:
                return
            mid = (lo + hi) // 2
            seg = self._ranks[d][lo:hi]
            left = seg < mid
            order = np.concatenate((np.flatnonzero(left), np.flatnonzero(~left)))
            self._ranks[d + 1][lo:hi] = seg[order]
            self._ys[d + 1][lo:hi] = self._ys[d][lo:hi][order]
            split(lo, mid, d + 1)
            split(mid, hi, d + 1)

        split(0, n, 0)
        # Prepared sets are rebuildable, so the cache is a plain LRU;
        # callers hold direct references, eviction never invalidates them.
        self._cache: OrderedDict[CanonicalSet, PreparedSet] = OrderedDict()
        self._cache_size = max(1, int(cache_size))

    # -- storage accounting -------------------------------------------------

    @property
    def stored_multiplicity(self) -> int:
        """Total point slots held across all levels of the tree."""
        return sum(len(r) for r in self._ranks)

    # -- rank plumbing ------------------------------------------------------

    def _xrange(self, rect: Rect):
        a = int(np.searchsorted(self._xs, rect.xlo, "left"))
        b = int(np.searchsorted(self._xs, rect.xhi, "right"))
        return a, b

    def _xcanon(self, a, b):
        out = []

        def rec(lo, hi, d):
            if hi <= a or b <= lo:
                return
            if a <= lo and hi <= b:
                out.append((lo, hi, d))
                return
            mid = (lo + hi) // 2
            rec(lo, mid, d + 1)
            rec(mid, hi, d + 1)

        rec(0, self.n, 0)
        return out

    def _yrun(self, node, ylo, yhi):
        lo, hi, d = node
        ys = self._ys[d]
        a = lo + int(np.searchsorted(ys[lo:hi], ylo, "left"))
        b = lo + int(np.searchsorted(ys[lo:hi], yhi, "right"))
        return a, b

    def _ycanon(self, node, ya, yb, out):
        lo, hi, d = node

        def rec(l, r):
            if r <= ya or yb <= l:
                return
            if ya <= l and r <= yb:
                out.append(CanonicalSet(lo, hi, d, l, r))
                return
            mid = (l + r) // 2
            rec(l, mid)
            rec(mid, r)

        rec(lo, hi)

    # -- selection ----------------------------------------------------------

    def select(self, rect: Rect, mode: str = "pruned"):
        """Canonical sets for the rectangle; [] when it holds no points."""
        rect = Rect(*rect)
        if not rect.well_formed:
            raise ValueError("rectangle has negative extent")
        if mode not in ("pruned", "full"):
            raise ValueError(f"unknown mode {mode!r}")
        a, b = self._xrange(rect)
        if a >= b:
            return []
        xnodes = self._xcanon(a, b)
        if mode == "full":
            out = []
            for node in xnodes:
                ya, yb = self._yrun(node, rect.ylo, rect.yhi)
                if ya < yb:
                    self._ycanon(node, ya, yb, out)
            return out
        return self._select_pruned(xnodes, rect)

    def _select_pruned(self, xnodes, rect):
        # Peel the outermost x-nodes; a lone node is peeled both ways.
        if len(xnodes) == 1:
            lo, hi, d = xnodes[0]
            if hi - lo == 1:
                pieces = list(xnodes)
            else:
                mid = (lo + hi) // 2
                pieces = _peel_left(lo, mid, d + 1) + _peel_right(mid, hi, d + 1)
        else:
            pieces = (
                _peel_left(*xnodes[0]) + xnodes[1:-1] + _peel_right(*xnodes[-1])
            )

        spans = []
        for node in pieces:
            ya, yb = self._yrun(node, rect.ylo, rect.yhi)
            if ya < yb:
                d = node[2]
                spans.append((node, ya, yb, self._ys[d][ya], self._ys[d][yb - 1]))
        if not spans:
            return []

        k = len(spans)
        pre_max = [-_INF] * k
        pre_min = [_INF] * k
        for i in range(1, k):
            pre_max[i] = max(pre_max[i - 1], spans[i - 1][4])
            pre_min[i] = min(pre_min[i - 1], spans[i - 1][3])
        suf_max = [-_INF] * k
        suf_min = [_INF] * k
        for i in range(k - 2, -1, -1):
            suf_max[i] = max(suf_max[i + 1], spans[i + 1][4])
            suf_min[i] = min(suf_min[i + 1], spans[i + 1][3])

        out = []
        for i, (node, ya, yb, _, _) in enumerate(spans):
            topfloor = min(pre_max[i], suf_max[i])
            botfloor = max(pre_min[i], suf_min[i])
            lo, hi, d = node
            ys = self._ys[d]
            ta = lo + int(np.searchsorted(ys[lo:hi], topfloor, "left"))
            ta = max(ta, ya)
            bb = lo + int(np.searchsorted(ys[lo:hi], botfloor, "right"))
            bb = min(bb, yb)
            if ta <= bb:
                self._ycanon(node, ya, yb, out)
            else:
                if ya < bb:
                    self._ycanon(node, ya, bb, out)
                if ta < yb:
                    self._ycanon(node, ta, yb, out)
        return out

    # -- materialization ----------------------------------------------------

    def points_of(self, c: CanonicalSet):
        ids = self._xorder[self._ranks[c.depth][c.ya:c.yb]]
        return [self._pts[i] for i in ids]

    def prepared(self, c: CanonicalSet) -> PreparedSet:
        ps = self._cache.get(c)
        if ps is None:
            ps = PreparedSet.from_points(self.points_of(c))
            self._cache[c] = ps
            while len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        else:
            self._cache.move_to_end(c)
        return ps

    def points_in(self, rect: Rect):
        """All points inside the rectangle, by direct filtering."""
        rect = Rect(*rect)
        return [
            p
            for p in self._pts
            if rect.xlo <= p[0] <= rect.xhi and rect.ylo <= p[1] <= rect.yhi
        ]


def _peel_left(lo, hi, d):
    if hi - lo <= 1:
        return [(lo, hi, d)]
    mid = (lo + hi) // 2
    return _peel_left(lo, mid, d + 1) + [(mid, hi, d + 1)]


def _peel_right(lo, hi, d):
    if hi - lo <= 1:
        return [(lo, hi, d)]
    mid = (lo + hi) // 2
    return [(lo, mid, d + 1)] + _peel_right(mid, hi, d + 1)


def sed_in_rect(index: RangeIndex, rect, engine="deterministic", mode="pruned",
                seed=0, stats=None):
    """Smallest enclosing disk of the points inside the rectangle.

    Raises EmptyQuery when the rectangle holds no points.  The brute
    engine filters and solves directly, bypassing the index structure.
    """
    if engine == "brute":
        pts = index.points_in(rect)
        d = welzl(pts)
        if d is None:
            raise EmptyQuery("rectangle holds no points")
        return d
    if engine not in ("deterministic", "randomized"):
        raise ValueError(f"unknown engine {engine!r}")
    sel = index.select(rect, mode)
    if not sel:
        raise EmptyQuery("rectangle holds no points")
    if stats is not None:
        stats.canonical_sets += len(sel)
    prepared = [index.prepared(c) for c in sel]
    if engine == "deterministic":
        return sed_query(prepared, stats)
    return dmd_query(prepared, seed, stats)
