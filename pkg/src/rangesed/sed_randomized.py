"""Randomized engine: a memoized drop-one recursion over prepared sets.

The deterministic engine resolves every canonical section of the union
hull.  This engine instead shuffles the sets once and works through
subproblems keyed by triples (x, y, z), where a key names the sets
1..z together with the two distinguished sets at positions y+z and
x+y+z of the shuffled order.  Each step drops one distinguished set,
solves the remainder (memoized), and keeps that answer when the
dropped set turns out to be covered; covering is decided by a single
farthest-point descent per set.  When no drop survives, each of the
three distinguished sets holds a support point of the answer, so the
answer equals the smallest enclosing disk of just those three sets.
Those three-set instances are the base cases, handed to the section
engine.
"""

from __future__ import annotations

import random

from .errors import EmptyQuery
from .geom import Disk, disk_contains
from .sed_multi import sed_query

__all__ = ["covers_set", "dmd_query"]

# Slack for the drop tests. A dropped set's farthest point can sit
# exactly on the subproblem disk only through a degenerate tie; the
# slack keeps float noise in the circumcenter from flipping such a
# point outside, at the price of an error far below the reported
# tolerance of the engine.
_DROP_TOL = 1e-12


def covers_set(ps, d: Disk, stats=None) -> bool:
    """True iff every point of the prepared set ps lies in d.

    Only the point farthest from the center can stick out, so one
    diagram descent decides the whole set.
    """
    if stats is not None:
        stats.containment_checks += 1
    far = ps.locate_farthest(d.center, stats)
    return disk_contains(d, far, _DROP_TOL)


def dmd_query(prepared, seed: int = 0, stats=None) -> Disk:
    """Smallest disk enclosing the union of the prepared sets.

    The recursion of the module docstring, entered at (1, 1, m - 2)
    over a seed-shuffled copy of the sets and evaluated with an
    explicit stack so deep chains cannot overflow.  One or two sets
    are a single base case.  stats picks up cells (memo misses),
    base_cases, and containment_checks on top of the section engine's
    counters.
    """
    m = len(prepared)
    if m == 0:
        raise EmptyQuery("no sets")
    order = list(range(m))
    random.Random(seed).shuffle(order)
    sets = [prepared[i] for i in order]

    def base(ids):
        if stats is not None:
            stats.base_cases += 1
        return sed_query([sets[i] for i in ids], stats)

    if m <= 2:
        return base(range(m))

    memo = {}
    entry = (1, 1, m - 2)
    stack = [[*entry, -1]]
    while stack:
        frame = stack[-1]
        x, y, z, i = frame
        key = (x, y, z)
        if key in memo:
            stack.pop()
            continue
        if i < 0:
            if stats is not None:
                stats.cells += 1
            i = 0
        if z == 1:
            memo[key] = base((0, y, x + y))
            stack.pop()
            continue
        # Each entry drops one distinguished set: the last of the
        # prefix, the nearer pinned set, or the farther pinned set.
        drops = (
            (z, (x, y + 1, z - 1)),
            (y + z, (x + y, 1, z - 1)),
            (x + y + z, (y, 1, z - 1)),
        )
        if y == 1:
            drops = drops[::-1]
        settled = False
        while i < 3:
            pos, sub = drops[i]
            cand = memo.get(sub)
            if cand is None:
                frame[3] = i
                stack.append([*sub, -1])
                settled = True
                break
            if covers_set(sets[pos - 1], cand, stats):
                memo[key] = cand
                stack.pop()
                settled = True
                break
            i += 1
        if settled:
            continue
        # All three distinguished sets hold a support point.
        memo[key] = base((z - 1, y + z - 1, x + y + z - 1))
        stack.pop()
    return memo[entry]
