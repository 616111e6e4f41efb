"""Centroid decomposition of a tree, searched under an oracle.

The tree is given by vertex adjacency where every edge carries an
opaque hashable key (its "pair").  A search starts at the centroid and
repeatedly asks the oracle about the current vertex; the oracle either
finishes (Success / Abort) or names an incident edge to descend
through.  Descending through an edge whose far side holds no remaining
vertices ends the search with that edge as the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2
from typing import Any, NamedTuple

from .errors import InconsistentOracle, NoVertices


@dataclass(frozen=True)
class Success:
    payload: Any = None


@dataclass(frozen=True)
class Descend:
    pair: Any


@dataclass(frozen=True)
class Abort:
    payload: Any = None


class SearchResult(NamedTuple):
    kind: str  # "success" | "edge" | "aborted"
    payload: Any
    calls: int


class _Node:
    __slots__ = ("vid", "children")

    def __init__(self, vid):
        self.vid = vid
        self.children = {}


class CentroidTree:
    """Centroid decomposition over vertices 0..n-1."""

    def __init__(self, root, height, count):
        self.root = root
        self.height = height
        self.count = count

    @classmethod
    def build(cls, n: int, adjacency) -> "CentroidTree":
        """adjacency[v] is a list of (edge_key, neighbor) pairs."""
        if n == 0:
            raise NoVertices("cannot decompose an empty tree")
        removed = [False] * n

        def component(start):
            comp = [start]
            seen = {start}
            k = 0
            while k < len(comp):
                v = comp[k]
                k += 1
                for _, u in adjacency[v]:
                    if not removed[u] and u not in seen:
                        seen.add(u)
                        comp.append(u)
            return comp

        def centroid_of(comp):
            total = len(comp)
            if total == 1:
                return comp[0]
            in_comp = set(comp)
            size = {}
            # Rooted post-order sizes, then the standard centroid walk.
            root = comp[0]
            parent = {root: None}
            order = [root]
            k = 0
            while k < len(order):
                v = order[k]
                k += 1
                for _, u in adjacency[v]:
                    if u in in_comp and not removed[u] and u != parent[v]:
                        parent[u] = v
                        order.append(u)
            for v in reversed(order):
                size[v] = 1 + sum(
                    size[u] for _, u in adjacency[v]
                    if u in in_comp and not removed[u] and parent.get(u) == v
                )
            v = root
            while True:
                heavy = None
                for _, u in adjacency[v]:
                    if u in in_comp and not removed[u] and parent.get(u) == v:
                        if size[u] * 2 > total:
                            heavy = u
                            break
                if heavy is None:
                    if (total - size[v]) * 2 > total:
                        # The "up" side is heavy; cannot happen after walk.
                        raise AssertionError("centroid walk diverged")
                    return v
                v = heavy

        def decompose(start):
            comp = component(start)
            c = centroid_of(comp)
            removed[c] = True
            node = _Node(c)
            height = 1
            for pair, u in adjacency[c]:
                if not removed[u]:
                    child, child_h = decompose(u)
                    node.children[pair] = child
                    height = max(height, child_h + 1)
            return node, height

        root, height = decompose(0)
        if sum(1 for r in removed if r) != n:
            raise NoVertices("adjacency does not describe one connected tree")
        bound = 1 if n == 1 else ceil(log2(n)) + 1
        assert height <= bound, (height, n)
        return cls(root, height, n)

    def search(self, oracle, pairs_of=None) -> SearchResult:
        """Descend under the oracle; call budget is height + 1, enforced."""
        node = self.root
        calls = 0
        visited = set()
        while True:
            if node.vid in visited:
                raise InconsistentOracle("vertex visited twice")
            visited.add(node.vid)
            res = oracle(node.vid)
            calls += 1
            if calls > self.height + 1:
                raise InconsistentOracle("oracle exceeded the call budget")
            if isinstance(res, Success):
                return SearchResult("success", res.payload, calls)
            if isinstance(res, Abort):
                return SearchResult("aborted", res.payload, calls)
            if not isinstance(res, Descend):
                raise InconsistentOracle(f"bad oracle answer: {res!r}")
            pair = res.pair
            if pairs_of is not None and pair not in tuple(pairs_of(node.vid)):
                raise InconsistentOracle(f"descend through non-incident edge {pair}")
            child = node.children.get(pair)
            if child is None:
                return SearchResult("edge", pair, calls)
            node = child
