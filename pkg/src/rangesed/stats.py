"""Counters threaded through queries for cost accounting."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class QueryStats:
    """Work counters; every field is a plain count, zero by default.

    dist_comparisons counts point-distance comparisons made while
    locating farthest points and deciding dominance along probe lines.
    The remaining fields count higher-level events and exist so tests
    can pin the shape of a query, not just its result.
    """

    canonical_sets: int = 0
    dist_comparisons: int = 0
    oracle_calls: int = 0
    searches: int = 0
    survival_checks: int = 0
    sep_searches: int = 0
    sections: int = 0
    candidate_points: int = 0
    base_cases: int = 0
    containment_checks: int = 0
    cells: int = 0
    fallbacks: int = 0

    def merge(self, other: "QueryStats") -> None:
        for f in self.__dataclass_fields__:
            setattr(self, f, getattr(self, f) + getattr(other, f))
