"""Rectangle range queries for smallest enclosing disks of planar points."""

from .errors import (
    CollinearInput,
    EmptyInput,
    EmptyQuery,
    GeometryError,
    HullsOverlap,
    InconsistentOracle,
    NoVertices,
    ParseError,
    TooFewPoints,
    TooLarge,
)
from .geom import Disk, Point
from .hull import build_hull, merge_hulls
from .fpvd import Fpvd, PreparedSet, build_fpvd
from .range_index import CanonicalSet, RangeIndex, Rect, sed_in_rect
from .sed_multi import sed_query
from .sed_randomized import dmd_query
from .sed_single import sed_of_prepared, sed_points
from .stats import QueryStats

__all__ = [
    "CanonicalSet",
    "CollinearInput",
    "Disk",
    "EmptyInput",
    "EmptyQuery",
    "Fpvd",
    "GeometryError",
    "HullsOverlap",
    "InconsistentOracle",
    "NoVertices",
    "ParseError",
    "Point",
    "PreparedSet",
    "QueryStats",
    "RangeIndex",
    "Rect",
    "TooFewPoints",
    "TooLarge",
    "build_fpvd",
    "build_hull",
    "dmd_query",
    "merge_hulls",
    "sed_in_rect",
    "sed_of_prepared",
    "sed_points",
    "sed_query",
]

__version__ = "0.1.0"
