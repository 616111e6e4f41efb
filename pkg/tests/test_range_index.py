"""Rectangle selection over the two-level index, both modes."""

from __future__ import annotations

import math
import random
import warnings

import pytest

from rangesed.errors import EmptyInput, EmptyQuery
from rangesed.hull import build_hull
from rangesed.oracles import welzl
from rangesed.range_index import CanonicalSet, RangeIndex, Rect, sed_in_rect
from rangesed.stats import QueryStats

from helpers import assert_same_disk


def rand_cloud(rng, n, lo=-1000.0, hi=1000.0):
    return [(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(n)]


def rand_rect(rng, lo=-1000.0, hi=1000.0):
    x1, x2 = sorted(rng.uniform(lo, hi) for _ in range(2))
    y1, y2 = sorted(rng.uniform(lo, hi) for _ in range(2))
    return Rect(x1, y1, x2, y2)


def brute_filter(pts, rect):
    return [
        p for p in pts
        if rect.xlo <= p[0] <= rect.xhi and rect.ylo <= p[1] <= rect.yhi
    ]


def hull_coords(pts):
    return sorted((p[0], p[1]) for p in build_hull(pts))


def test_empty_input_rejected():
    with pytest.raises(EmptyInput):
        RangeIndex([])


def test_single_point():
    idx = RangeIndex([(3.0, 4.0)])
    sel = idx.select(Rect(0, 0, 10, 10))
    assert len(sel) == 1
    assert idx.points_of(sel[0]) == [(3.0, 4.0)]
    assert idx.select(Rect(5, 5, 10, 10)) == []


def test_duplicates_collapse_with_warning():
    with warnings.catch_warnings(record=True) as seen:
        warnings.simplefilter("always")
        idx = RangeIndex([(1, 2), (3, 4), (1, 2), (1, 2)])
    assert idx.n == 2
    assert any("duplicate" in str(w.message) for w in seen)


def test_full_mode_partitions_exactly():
    rng = random.Random(31)
    pts = rand_cloud(rng, 400)
    idx = RangeIndex(pts)
    lg = math.ceil(math.log2(idx.n))
    for _ in range(200):
        rect = rand_rect(rng)
        sel = idx.select(rect, "full")
        assert len(sel) <= (2 * lg) ** 2
        got = [q for c in sel for q in idx.points_of(c)]
        assert len(got) == len(set(got))
        assert sorted(got) == sorted(brute_filter(pts, rect))


def test_full_mode_covers_everything_with_root_range():
    rng = random.Random(32)
    pts = rand_cloud(rng, 100)
    idx = RangeIndex(pts)
    sel = idx.select(Rect(-2000, -2000, 2000, 2000), "full")
    got = [q for c in sel for q in idx.points_of(c)]
    assert sorted(got) == sorted(pts)


def test_pruned_mode_sets_are_disjoint_subsets():
    rng = random.Random(33)
    pts = rand_cloud(rng, 500)
    idx = RangeIndex(pts)
    for _ in range(200):
        rect = rand_rect(rng)
        inside = set(brute_filter(pts, rect))
        got = [q for c in idx.select(rect, "pruned") for q in idx.points_of(c)]
        assert len(got) == len(set(got))
        assert set(got) <= inside


def test_pruned_mode_keeps_the_hull():
    rng = random.Random(34)
    for trial in range(60):
        pts = rand_cloud(rng, rng.choice((50, 200, 800)))
        idx = RangeIndex(pts)
        for _ in range(20):
            rect = rand_rect(rng)
            inside = brute_filter(pts, rect)
            kept = [q for c in idx.select(rect, "pruned") for q in idx.points_of(c)]
            if not inside:
                assert kept == []
                continue
            assert hull_coords(kept) == hull_coords(inside)


def test_pruned_mode_keeps_the_hull_on_skewed_data():
    # Slanted and clustered inputs stress the floor bookkeeping far from
    # uniformity; completeness must not depend on the distribution.
    rng = random.Random(35)
    for _ in range(40):
        kind = rng.randrange(3)
        if kind == 0:
            pts = [(t + rng.uniform(-5, 5), 2 * t + rng.uniform(-5, 5))
                   for t in [rng.uniform(-500, 500) for _ in range(300)]]
        elif kind == 1:
            pts = []
            for _ in range(8):
                cx, cy = rng.uniform(-800, 800), rng.uniform(-800, 800)
                pts += [(cx + rng.gauss(0, 12), cy + rng.gauss(0, 12))
                        for _ in range(40)]
        else:
            pts = [(rng.uniform(-1000, 1000), rng.choice((-1, 1)) * rng.uniform(0, 3))
                   for _ in range(300)]
        pts = list(dict.fromkeys(pts))
        idx = RangeIndex(pts)
        for _ in range(15):
            rect = rand_rect(rng)
            inside = brute_filter(pts, rect)
            kept = [q for c in idx.select(rect, "pruned") for q in idx.points_of(c)]
            if not inside:
                assert kept == []
                continue
            assert hull_coords(kept) == hull_coords(inside)


def test_pruned_selection_stays_small():
    rng = random.Random(36)
    pts = rand_cloud(rng, 4096)
    idx = RangeIndex(pts)
    lg = math.log2(4096)
    worst = 0
    for _ in range(300):
        sel = idx.select(rand_rect(rng), "pruned")
        worst = max(worst, len(sel))
    assert worst <= 4 * lg


def test_stored_multiplicity_bound():
    rng = random.Random(37)
    n = 2048
    idx = RangeIndex(rand_cloud(rng, n))
    lg = math.log2(n)
    assert idx.stored_multiplicity <= n * lg * lg
    # The tree holds one full copy per level.
    assert idx.stored_multiplicity == idx.n * len(idx._ranks)


def test_every_node_hull_matches_direct_build():
    # Walk every (x-node, y-interval) pair of a small index and compare
    # its prepared hull against a fresh hull over the same points.
    pts = [(x, y) for x in (0, 1, 2, 3) for y in (0, 1)]
    idx = RangeIndex(pts)

    xnodes = []

    def xwalk(lo, hi, d):
        xnodes.append((lo, hi, d))
        if hi - lo > 1:
            mid = (lo + hi) // 2
            xwalk(lo, mid, d + 1)
            xwalk(mid, hi, d + 1)

    xwalk(0, idx.n, 0)
    checked = 0
    for lo, hi, d in xnodes:
        ivs = []

        def ywalk(l, r):
            ivs.append((l, r))
            if r - l > 1:
                mid = (l + r) // 2
                ywalk(l, mid)
                ywalk(mid, r)

        ywalk(lo, hi)
        for l, r in ivs:
            c = CanonicalSet(lo, hi, d, l, r)
            ps = idx.prepared(c)
            want = build_hull(idx.points_of(c))
            assert sorted((p[0], p[1]) for p in ps.hull) == sorted(
                (p[0], p[1]) for p in want
            )
            checked += 1
    assert checked > 20


def test_prepared_sets_are_cached():
    idx = RangeIndex([(i, i % 3) for i in range(16)])
    sel = idx.select(Rect(2, -1, 13, 4))
    assert sel
    first = [idx.prepared(c) for c in sel]
    second = [idx.prepared(c) for c in sel]
    assert all(a is b for a, b in zip(first, second))


def test_prepared_cache_evicts_least_recent():
    idx = RangeIndex([(i, i % 3) for i in range(16)], cache_size=2)
    (a,) = idx.select(Rect(0, -1, 0.5, 4))
    (b,) = idx.select(Rect(4, -1, 4.5, 4))
    (c,) = idx.select(Rect(8, -1, 8.5, 4))
    pa = idx.prepared(a)
    pb = idx.prepared(b)
    assert idx.prepared(a) is pa  # refresh a, so b is now oldest
    idx.prepared(c)
    assert len(idx._cache) == 2
    assert idx.prepared(a) is pa
    assert idx.prepared(b) is not pb


def test_sed_in_rect_engines_agree_with_brute():
    rng = random.Random(38)
    pts = rand_cloud(rng, 600)
    idx = RangeIndex(pts)
    answered = 0
    for _ in range(150):
        rect = rand_rect(rng)
        inside = brute_filter(pts, rect)
        if not inside:
            with pytest.raises(EmptyQuery):
                sed_in_rect(idx, rect)
            continue
        want = welzl(inside)
        for mode in ("pruned", "full"):
            st = QueryStats()
            assert_same_disk(sed_in_rect(idx, rect, "deterministic", mode, 0, st), want)
        assert_same_disk(sed_in_rect(idx, rect, "randomized", "pruned", 5), want)
        assert_same_disk(sed_in_rect(idx, rect, "brute"), want)
        answered += 1
    assert answered > 60


def test_bad_arguments():
    idx = RangeIndex([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        idx.select(Rect(1, 0, 0, 1))
    with pytest.raises(ValueError):
        idx.select(Rect(0, 0, 1, 1), "fast")
    with pytest.raises(ValueError):
        sed_in_rect(idx, Rect(0, 0, 1, 1), engine="quantum")
