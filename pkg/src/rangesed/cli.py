"""Command-line driver.

Subcommands: gen (datasets), build-info (index shape), query (one
report per rectangle), verify (all engines against the brute oracle),
bench (work counters across sizes), render (SVG scene).

File formats are whitespace-separated decimals, one record per line;
blank lines and '#' comments are skipped.  Point files hold "x y",
query files hold "xlo ylo xhi yhi".  Reports go to stdout; seeds and
notes go to stderr so machine-readable output stays clean.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import statistics
import sys
import time
import warnings
from dataclasses import dataclass

from .errors import EmptyQuery, GeometryError, ParseError, TooFewPoints
from .fpvd import PreparedSet
from .range_index import RangeIndex, Rect, sed_in_rect
from .sed_single import sed_of_prepared
from .stats import QueryStats
from .svg import bisector_graphics, fpvd_graphics, render_scene

_ENGINES = ("deterministic", "randomized", "brute")
_MODES = ("pruned", "full")


# -- file formats -------------------------------------------------------


def _records(path):
    try:
        with open(path, encoding="ascii") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    for no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        yield no, text.split()


def read_points(path):
    """Parse "x y" lines into coordinate pairs."""
    pts = []
    for no, fields in _records(path):
        if len(fields) != 2:
            raise ParseError(f"{path}: expected 'x y', got {len(fields)} fields",
                             line=no)
        try:
            pts.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise ParseError(f"{path}: bad decimal", line=no) from None
    return pts


def read_rects(path):
    """Parse "xlo ylo xhi yhi" lines into well-formed rectangles."""
    rects = []
    for no, fields in _records(path):
        if len(fields) != 4:
            raise ParseError(
                f"{path}: expected 'xlo ylo xhi yhi', got {len(fields)} fields",
                line=no)
        try:
            rect = Rect(*(float(f) for f in fields))
        except ValueError:
            raise ParseError(f"{path}: bad decimal", line=no) from None
        if not rect.well_formed:
            raise ParseError(f"{path}: rectangle extents are reversed", line=no)
        rects.append(rect)
    return rects


def _build_index(pts):
    """Index construction with duplicate-collapse warnings on stderr."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        index = RangeIndex(pts)
    for w in caught:
        print(f"note: {w.message}", file=sys.stderr)
    return index


def _effective_seed(args) -> int:
    seed = args.seed
    if seed is None:
        seed = time.time_ns() % (1 << 32)
    print(f"# seed {seed}", file=sys.stderr)
    return seed


# -- query reports ------------------------------------------------------


@dataclass
class QueryReport:
    """One query's outcome plus its work counters.

    disk is (center x, center y, radius) or None for an empty
    rectangle; the radius is the square root taken at this boundary,
    everything inside the library stays squared.
    """

    index: int
    disk: tuple[float, float, float] | None
    counts: dict
    time_ms: float

    @property
    def empty(self) -> bool:
        return self.disk is None


def serialize_report(rep: QueryReport) -> str:
    disk = rep.disk
    if disk is not None:
        disk = {"cx": disk[0], "cy": disk[1], "r": disk[2]}
    return json.dumps(
        {"index": rep.index, "disk": disk, "counts": rep.counts,
         "time_ms": rep.time_ms},
        separators=(",", ":"))


def parse_report(text: str) -> QueryReport:
    obj = json.loads(text)
    disk = obj["disk"]
    if disk is not None:
        disk = (disk["cx"], disk["cy"], disk["r"])
    return QueryReport(obj["index"], disk, dict(obj["counts"]), obj["time_ms"])


def format_report(rep: QueryReport) -> str:
    if rep.disk is None:
        return f"[{rep.index}] empty time_ms={rep.time_ms:.3f}"
    cx, cy, r = rep.disk
    counts = " ".join(f"{k}={v}" for k, v in rep.counts.items())
    return (f"[{rep.index}] center=({cx:.12g}, {cy:.12g}) radius={r:.12g} "
            f"{counts} time_ms={rep.time_ms:.3f}")


def run_query(index, rect, engine, mode, seed, qno) -> QueryReport:
    st = QueryStats()
    t0 = time.perf_counter()
    try:
        disk = sed_in_rect(index, rect, engine=engine, mode=mode, seed=seed,
                           stats=st)
    except EmptyQuery:
        disk = None
    ms = (time.perf_counter() - t0) * 1e3
    counts = {
        "m": st.canonical_sets,
        "sections": st.sections,
        "oracle_calls": st.oracle_calls,
        "sep_searches": st.sep_searches,
        "dist_comparisons": st.dist_comparisons,
    }
    out = None
    if disk is not None:
        out = (disk.center[0], disk.center[1], math.sqrt(disk.radius_sq))
    return QueryReport(qno, out, counts, ms)


# -- subcommands --------------------------------------------------------


def cmd_gen(args) -> int:
    if args.n < 1:
        raise ParseError("n must be at least 1")
    seed = _effective_seed(args)
    rng = random.Random(seed)
    pts = []
    if args.dist == "uniform":
        for _ in range(args.n):
            pts.append((rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)))
    elif args.dist == "clustered":
        # About sqrt(n)/2 centers with Gaussian spread 30: dense blobs,
        # occasionally overlapping.
        k = max(2, round(math.sqrt(args.n) / 2))
        centers = [(rng.uniform(-1000, 1000), rng.uniform(-1000, 1000))
                   for _ in range(k)]
        for _ in range(args.n):
            cx, cy = centers[rng.randrange(k)]
            pts.append((rng.gauss(cx, 30.0), rng.gauss(cy, 30.0)))
    else:  # circle: all points on one radius-1000 circle about the origin
        for _ in range(args.n):
            a = rng.uniform(0.0, 2.0 * math.pi)
            pts.append((1000.0 * math.cos(a), 1000.0 * math.sin(a)))
    body = "".join(f"{x:.9f} {y:.9f}\n" for x, y in pts)
    if args.out == "-":
        sys.stdout.write(body)
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(body)
    return 0


def cmd_build_info(args) -> int:
    pts = read_points(args.points)
    t0 = time.perf_counter()
    index = _build_index(pts)
    dt = time.perf_counter() - t0
    print(f"points {index.n}")
    print(f"levels {index.stored_multiplicity // index.n}")
    print(f"stored_multiplicity {index.stored_multiplicity}")
    print(f"build_seconds {dt:.3f}")
    return 0


def cmd_query(args) -> int:
    pts = read_points(args.points)
    rects = read_rects(args.queries)
    seed = _effective_seed(args)
    index = _build_index(pts)
    for qno, rect in enumerate(rects, start=1):
        rep = run_query(index, rect, args.engine, args.mode, seed, qno)
        if args.format == "json-lines":
            print(serialize_report(rep))
        else:
            print(format_report(rep))
    return 0


def _disks_close(a, b, tol) -> bool:
    if a is None or b is None:
        return a is None and b is None
    big = max(a.radius_sq, b.radius_sq)
    if abs(a.radius_sq - b.radius_sq) > tol * max(big, 1e-30):
        return False
    dx = a.center[0] - b.center[0]
    dy = a.center[1] - b.center[1]
    lim = tol * math.sqrt(big)
    return dx * dx + dy * dy <= lim * lim


def _fmt_disk(d) -> str:
    if d is None:
        return "empty"
    return (f"center=({d.center[0]:.12g}, {d.center[1]:.12g}) "
            f"radius={math.sqrt(d.radius_sq):.12g}")


def cmd_verify(args) -> int:
    pts = read_points(args.points)
    rects = read_rects(args.queries)
    seed = _effective_seed(args)
    index = _build_index(pts)
    runs = (("deterministic", "pruned"), ("deterministic", "full"),
            ("randomized", "pruned"))
    mismatches = 0
    for qno, rect in enumerate(rects, start=1):
        def run(engine, mode):
            try:
                return sed_in_rect(index, rect, engine=engine, mode=mode,
                                   seed=seed)
            except EmptyQuery:
                return None

        want = run("brute", "pruned")
        for engine, mode in runs:
            got = run(engine, mode)
            if not _disks_close(want, got, args.tol):
                mismatches += 1
                print(f"[{qno}] mismatch engine={engine} mode={mode} "
                      f"want {_fmt_disk(want)} got {_fmt_disk(got)}")
    print(f"verified {len(rects)} queries x {len(runs)} engine runs, "
          f"{mismatches} mismatches")
    return 1 if mismatches else 0


def cmd_bench(args) -> int:
    pts = read_points(args.points)
    sizes = args.sizes
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise ParseError("sizes must be strictly ascending")
    if sizes[0] < 2:
        raise ParseError("sizes must be at least 2")
    if sizes[-1] > len(pts):
        raise ParseError(
            f"points file holds {len(pts)} points, largest size is {sizes[-1]}")
    engines = tuple(args.engines.split(","))
    for e in engines:
        if e not in _ENGINES:
            raise ParseError(f"unknown engine {e!r}")
    seed = _effective_seed(args)

    rows = []
    for size in sizes:
        subset = pts[:size]
        index = _build_index(subset)
        xlo = min(p[0] for p in subset)
        xhi = max(p[0] for p in subset)
        ylo = min(p[1] for p in subset)
        yhi = max(p[1] for p in subset)
        rng = random.Random(seed ^ size)
        rects = []
        for _ in range(args.queries):
            x1, x2 = sorted((rng.uniform(xlo, xhi), rng.uniform(xlo, xhi)))
            y1, y2 = sorted((rng.uniform(ylo, yhi), rng.uniform(ylo, yhi)))
            rects.append(Rect(x1, y1, x2, y2))
        for engine in engines:
            per = {"m": [], "dist_comparisons": [], "oracle_calls": [],
                   "base_cases": []}
            walls = []
            for rect in rects:
                st = QueryStats()
                t0 = time.perf_counter()
                try:
                    sed_in_rect(index, rect, engine=engine, mode=args.mode,
                                seed=seed, stats=st)
                except EmptyQuery:
                    continue
                walls.append((time.perf_counter() - t0) * 1e3)
                for key in per:
                    per[key].append(getattr(st, "canonical_sets"
                                            if key == "m" else key))
            rows.append({
                "n": size,
                "engine": engine,
                "answered": len(walls),
                "mean": {k: (statistics.fmean(v) if v else 0.0)
                         for k, v in per.items()},
                "median": {k: (float(statistics.median(v)) if v else 0.0)
                           for k, v in per.items()},
                "wall_ms": {
                    "mean": statistics.fmean(walls) if walls else 0.0,
                    "median": float(statistics.median(walls)) if walls else 0.0,
                },
            })

    ratios = []
    for engine in engines:
        erows = [r for r in rows if r["engine"] == engine]
        for lo, hi in zip(erows, erows[1:]):
            base = lo["mean"]["dist_comparisons"]
            ratio = hi["mean"]["dist_comparisons"] / base if base else math.inf
            ref = (math.log2(hi["n"]) / math.log2(lo["n"])) ** 4
            ratios.append({"engine": engine, "n_lo": lo["n"], "n_hi": hi["n"],
                           "dist_cmp_ratio": ratio, "log4_ref": ref})

    if args.format == "json-lines":
        for row in rows:
            print(json.dumps(row, separators=(",", ":")))
        for rr in ratios:
            print(json.dumps({"ratio": rr}, separators=(",", ":")))
    else:
        for row in rows:
            mean, med = row["mean"], row["median"]
            print(f"n={row['n']} engine={row['engine']} "
                  f"answered={row['answered']} "
                  f"m mean={mean['m']:.1f} "
                  f"dist_cmp mean={mean['dist_comparisons']:.1f} "
                  f"median={med['dist_comparisons']:.1f} "
                  f"oracle mean={mean['oracle_calls']:.1f} "
                  f"base_cases mean={mean['base_cases']:.1f} "
                  f"wall_ms mean={row['wall_ms']['mean']:.3f} "
                  f"median={row['wall_ms']['median']:.3f}")
        for rr in ratios:
            print(f"ratio engine={rr['engine']} n {rr['n_lo']}->{rr['n_hi']}: "
                  f"dist_cmp x{rr['dist_cmp_ratio']:.2f} "
                  f"(log^4 reference x{rr['log4_ref']:.2f})")
    return 0


def cmd_render(args) -> int:
    pts = read_points(args.points)
    rect = Rect(*args.rect) if args.rect else None
    if rect is not None and not rect.well_formed:
        raise ParseError("rectangle extents are reversed")
    if rect is None:
        inside, outside = pts, []
    else:
        inside, outside = [], []
        for p in pts:
            hit = (rect.xlo <= p[0] <= rect.xhi
                   and rect.ylo <= p[1] <= rect.yhi)
            (inside if hit else outside).append(p)
    if len(set(inside)) < 2:
        where = " inside the rectangle" if rect is not None else ""
        raise TooFewPoints(f"need at least two distinct points{where}")

    ps = PreparedSet.from_points(inside)
    disk = sed_of_prepared(ps)
    hull = ps.hull
    if len(hull) >= 3:
        segments, rays = fpvd_graphics(ps.fpvd)
    else:
        segments, rays = [], bisector_graphics(hull[0], hull[1])
    doc = render_scene(outside, marked=inside, hull=hull, segments=segments,
                       rays=rays, disk=disk, rect=rect, width=args.width)
    try:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(doc)
    except OSError as exc:
        raise ParseError(f"cannot write {args.out}: {exc}") from exc
    print(f"wrote {args.out}: points={len(pts)} drawn={len(inside)} "
          f"hull={len(hull)} radius={math.sqrt(disk.radius_sq):.6g}")
    return 0


# -- argument plumbing --------------------------------------------------


def _add_seed(p):
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed (default: derived from the clock, printed)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rangesed",
        description="Rectangle smallest-enclosing-disk queries over planar "
                    "point sets.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated point file")
    p.add_argument("n", type=int)
    p.add_argument("--dist", choices=("uniform", "clustered", "circle"),
                   default="uniform")
    _add_seed(p)
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build-info", help="build the index and report its shape")
    p.add_argument("points")
    p.set_defaults(func=cmd_build_info)

    p = sub.add_parser("query", help="answer one rectangle per input line")
    p.add_argument("points")
    p.add_argument("queries")
    p.add_argument("--engine", choices=_ENGINES, default="deterministic")
    p.add_argument("--mode", choices=_MODES, default="pruned")
    _add_seed(p)
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify",
                       help="run every engine against the brute oracle")
    p.add_argument("points")
    p.add_argument("queries")
    _add_seed(p)
    p.add_argument("--tol", type=float, default=1e-9,
                   help="relative tolerance for disk agreement")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="work counters across point-set sizes")
    p.add_argument("points")
    p.add_argument("--sizes", type=_int_list, required=True,
                   help="comma-separated ascending sizes, e.g. 1024,4096")
    p.add_argument("--queries", type=int, default=50)
    p.add_argument("--engines", default="deterministic,randomized,brute",
                   help="comma-separated subset of "
                        "deterministic,randomized,brute")
    p.add_argument("--mode", choices=_MODES, default="pruned")
    _add_seed(p)
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw points, hull, diagram, and disk")
    p.add_argument("points")
    p.add_argument("--rect", type=float, nargs=4, default=None,
                   metavar=("XLO", "YLO", "XHI", "YHI"))
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument("--width", type=int, default=720)
    p.set_defaults(func=cmd_render)

    return top


def _int_list(text: str):
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
