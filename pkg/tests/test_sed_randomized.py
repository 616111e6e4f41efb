"""Randomized drop-one engine against the point-level oracle."""

from __future__ import annotations

import math
import random

import pytest

from rangesed.errors import EmptyQuery
from rangesed.fpvd import PreparedSet
from rangesed.geom import Disk
from rangesed.oracles import welzl
from rangesed.sed_randomized import covers_set, dmd_query
from rangesed.stats import QueryStats

from helpers import assert_same_disk


def cluster_family(rng, m, spread=1000.0, cell=60.0, max_pts=40):
    centers = []
    while len(centers) < m:
        c = (rng.uniform(-spread, spread), rng.uniform(-spread, spread))
        if all((c[0] - o[0]) ** 2 + (c[1] - o[1]) ** 2 > (3 * cell) ** 2 for o in centers):
            centers.append(c)
    sets = []
    for cx, cy in centers:
        n = rng.randint(1, max_pts)
        sets.append(
            [
                (round(cx + rng.uniform(-cell / 2, cell / 2), 3),
                 round(cy + rng.uniform(-cell / 2, cell / 2), 3))
                for _ in range(n)
            ]
        )
    return sets


def test_covers_set_matches_linear_scan():
    rng = random.Random(201)
    for _ in range(300):
        pts = [
            (rng.uniform(-100, 100), rng.uniform(-100, 100))
            for _ in range(rng.randint(1, 40))
        ]
        ps = PreparedSet.from_points(pts)
        c = (rng.uniform(-150, 150), rng.uniform(-150, 150))
        r_sq = rng.uniform(10, 250) ** 2
        d = Disk(c, r_sq)
        slow = all((p[0] - c[0]) ** 2 + (p[1] - c[1]) ** 2 <= r_sq for p in pts)
        assert covers_set(ps, d) == slow


def test_covers_set_trivial_cases():
    ps = PreparedSet.from_points([(0.0, 0.0), (4.0, 1.0), (2.0, 3.0)])
    assert covers_set(ps, Disk((2.0, 1.0), 1e6))
    lone = PreparedSet.from_points([(50.0, 50.0)])
    assert not covers_set(lone, Disk((0.0, 0.0), 1.0))


def test_empty_query_raises():
    with pytest.raises(EmptyQuery):
        dmd_query([])


def test_one_and_two_sets_are_single_base_cases():
    rng = random.Random(202)
    for m in (1, 2):
        for _ in range(40):
            sets = cluster_family(rng, m)
            st = QueryStats()
            got = dmd_query([PreparedSet.from_points(s) for s in sets], 7, st)
            assert st.base_cases == 1
            assert_same_disk(got, welzl([q for s in sets for q in s]))


def test_three_sets_is_one_forced_base_case():
    rng = random.Random(203)
    for _ in range(40):
        sets = cluster_family(rng, 3)
        st = QueryStats()
        got = dmd_query([PreparedSet.from_points(s) for s in sets], 11, st)
        assert st.cells == 1
        assert st.base_cases == 1
        assert_same_disk(got, welzl([q for s in sets for q in s]))


def test_matches_oracle_across_sizes():
    rng = random.Random(204)
    for _ in range(120):
        m = rng.randint(2, 9)
        sets = cluster_family(rng, m, max_pts=25)
        prepared = [PreparedSet.from_points(s) for s in sets]
        got = dmd_query(prepared, rng.randrange(1 << 30))
        assert_same_disk(got, welzl([q for s in sets for q in s]))


def test_correct_for_every_seed():
    rng = random.Random(205)
    for _ in range(20):
        sets = cluster_family(rng, rng.randint(3, 7))
        prepared = [PreparedSet.from_points(s) for s in sets]
        want = welzl([q for s in sets for q in s])
        for seed in range(25):
            assert_same_disk(dmd_query(prepared, seed), want)


def test_deterministic_under_fixed_seed():
    rng = random.Random(206)
    sets = cluster_family(rng, 6)
    prepared = [PreparedSet.from_points(s) for s in sets]
    runs = []
    for _ in range(3):
        st = QueryStats()
        runs.append((dmd_query(prepared, 99, st), st))
    d0, s0 = runs[0]
    for d, s in runs[1:]:
        assert d == d0
        assert s == s0


def test_work_counters_track_expected_growth():
    # Smoke-level regression guard: evaluated cells stay near m log m
    # and base cases near sqrt(m) log m, with a generous factor.
    rng = random.Random(207)
    for m in (8, 16, 32, 64):
        cells = base = 0
        trials = 20
        for _ in range(trials):
            sets = cluster_family(rng, m, spread=4000.0, cell=30.0, max_pts=6)
            prepared = [PreparedSet.from_points(s) for s in sets]
            st = QueryStats()
            got = dmd_query(prepared, rng.randrange(1 << 30), st)
            assert_same_disk(got, welzl([q for s in sets for q in s]))
            cells += st.cells
            base += st.base_cases
        lg = math.log2(m)
        assert cells / trials <= 10 * m * lg
        assert base / trials <= 10 * math.sqrt(m) * lg
