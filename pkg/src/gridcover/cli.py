"""Command-line entry point: ``python -m gridcover <command> ...``.

Exit codes: 0 success, 1 reproduction failure, 2 bounds only or cap exceeded,
3 nothing found, 64 usage error, 65 malformed input data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import constructions as K
from .config import CapExceeded
from .families import (
    AlgebraicMaxDeg, Circle, ClosedConvex, CoverabilityUnknown, CurveFamily, FixedRadiusCircle, Line,
    Monotone, Orthoconvex, SkewLine, StrictlyConvex,
)
from .geometry import GridSpec, grid_points, parse_rat
from .incidence import build_counterexample, check_star_property, max_collinear, points_per_line
from .render import render_cover, render_json, render_tiling
from .solver import Cover, exact_min_cover, verify_cover
from .tilings import EXACT, TILE_LIKE, TILE_LIKE_DENSITY, best_clip, clip_to_grid, find_periodic_tiling, get_shape, small_curve_lower

EXIT_OK, EXIT_FAIL, EXIT_BOUNDS, EXIT_NOT_FOUND, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3, 64, 65

CONSTRUCTIONS = ("lines", "skew", "monotone", "convex-rings", "concentric-circles", "strict-peel", "algebraic-bundles")

# clipped tiling bounds, as functions of the grid side
TILE_BOUNDS = {
    "unit-circle": ("n^2/4 + 2n + 4", lambda n: n * n / 4 + 2 * n + 4),
    "smallest-l": ("n^2/8 + n + 2", lambda n: n * n / 8 + n + 2),
    "square2": ("n^2/7 + 4n", lambda n: n * n / 7 + 4 * n),
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    """Validated command arguments. ``threads`` falls back to GRIDCOVER_THREADS, then 1."""

    command: str
    family: str | None = None
    grid: GridSpec | None = None
    n: int | None = None
    k: int | None = None
    kind: str | None = None
    shape: str | None = None
    max_inner_corners: int | None = None
    degree: int = 2
    radius2: str = "1"
    max_period: int = 8
    time_budget: float | None = None
    nodes: int | None = None
    threads: int = 1
    json_out: bool = False
    svg: Path | None = None
    inputs: list[str] = field(default_factory=list)
    only: list[str] = field(default_factory=list)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        threads = getattr(ns, "threads", None)
        if threads is None:
            env = os.environ.get("GRIDCOVER_THREADS", "")
            try:
                threads = int(env) if env else 1
            except ValueError:
                raise UsageError(f"GRIDCOVER_THREADS must be an integer, got {env!r}")
        if threads < 1:
            raise UsageError("--threads must be >= 1")
        grid = None
        if getattr(ns, "grid", None):
            try:
                grid = GridSpec.parse(ns.grid)
            except ValueError as exc:
                raise UsageError(str(exc))
        for name in ("n", "k", "max_period", "degree"):
            v = getattr(ns, name, None)
            if v is not None and v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
        if getattr(ns, "max_inner_corners", None) is not None and ns.max_inner_corners < 0:
            raise UsageError("--max-inner-corners must be >= 0")
        tb = getattr(ns, "time_budget", None)
        if tb is not None and tb <= 0:
            raise UsageError("--time-budget must be positive")
        only = []
        for item in getattr(ns, "only", None) or []:
            only += [s for s in item.split(",") if s]
        return cls(
            command=ns.command,
            family=getattr(ns, "family", None),
            grid=grid,
            n=getattr(ns, "n", None),
            k=getattr(ns, "k", None),
            kind=getattr(ns, "kind", None),
            shape=getattr(ns, "shape", None) or getattr(ns, "shape_pos", None),
            max_inner_corners=getattr(ns, "max_inner_corners", None),
            degree=getattr(ns, "degree", None) or 2,
            radius2=getattr(ns, "radius2", None) or "1",
            max_period=getattr(ns, "max_period", None) or 8,
            time_budget=tb,
            nodes=getattr(ns, "nodes", None),
            threads=threads,
            json_out=bool(getattr(ns, "json", False)),
            svg=Path(ns.svg) if getattr(ns, "svg", None) else None,
            inputs=list(getattr(ns, "inputs", None) or []),
            only=only,
        )


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _write_svg(path: Path | None, text: str) -> None:
    if path is not None:
        path.write_text(text, encoding="utf-8")


def make_family(cfg: RunConfig) -> CurveFamily:
    name = (cfg.family or "").lower()
    if name == "orthoconvex":
        return Orthoconvex(cfg.max_inner_corners)
    if name == "algebraic":
        return AlgebraicMaxDeg(cfg.degree)
    if name == "fixed-radius-circle":
        return FixedRadiusCircle(parse_rat(cfg.radius2))
    if name == "fixed-shape":
        if not cfg.shape:
            raise UsageError("fixed-shape needs --shape")
        return _load_shape(cfg.shape).family()
    simple = {"line": Line, "skew-line": SkewLine, "monotone": Monotone, "circle": Circle,
              "closed-convex": ClosedConvex, "strictly-convex": StrictlyConvex}
    if name not in simple:
        raise UsageError(f"unknown family {cfg.family!r}")
    return simple[name]()


def _load_shape(text: str):
    p = Path(text)
    if p.suffix == ".json" or p.is_file():
        try:
            obj = json.loads(p.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"cannot read shape file {text}: {exc}")
        offs = obj["offsets"] if isinstance(obj, dict) else obj
        return get_shape([tuple(o) for o in offs])
    try:
        return get_shape(text)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))


# ---------------------------------------------------------------------------
# commands

def cmd_solve(cfg: RunConfig) -> int:
    if cfg.grid is None:
        raise UsageError("solve needs --grid")
    fam = make_family(cfg)
    P = grid_points(cfg.grid)
    head = {"grid": str(cfg.grid), "family": fam.name, "params": fam.params_json()}
    try:
        r = exact_min_cover(P, fam, cfg.nodes, time_budget=cfg.time_budget, threads=cfg.threads)
    except (CapExceeded, CoverabilityUnknown) as exc:
        _emit({**head, "exact": None, "error": "cap exceeded", "report": str(exc)})
        return EXIT_BOUNDS
    except ValueError as exc:
        raise UsageError(str(exc))
    if isinstance(r, Cover):
        out = {**head, "exact": len(r), "lower": len(r), "upper": len(r), "method": r.method}
        if cfg.json_out:
            out["cover"] = r.to_json()
        _emit(out)
        if cfg.svg and P.d == 2:
            _write_svg(cfg.svg, render_cover(r))
        return EXIT_OK
    out = {**head, "exact": None, "lower": r.lower, "upper": r.upper, "method": r.method}
    if cfg.json_out and r.cover is not None:
        out["cover"] = r.cover.to_json()
    _emit(out)
    if cfg.svg and r.cover is not None and P.d == 2:
        _write_svg(cfg.svg, render_cover(r.cover))
    return EXIT_BOUNDS


def _construct(cfg: RunConfig) -> Cover:
    kind = cfg.kind
    if kind not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {kind!r}; choose from {', '.join(CONSTRUCTIONS)}")
    side = cfg.n if cfg.n is not None else (cfg.grid.dims[0] if cfg.grid and len(set(cfg.grid.dims)) == 1 else None)
    try:
        if kind == "lines":
            return K.line_cover_grid(cfg.grid or GridSpec((_need(side, kind),) * 2))
        if kind == "monotone":
            return K.monotone_cover(grid_points(cfg.grid or GridSpec((_need(side, kind),) * 2))).to_cover()
        if kind == "convex-rings":
            return K.convex_ring_cover(cfg.grid or GridSpec((_need(side, kind),) * 2))
        if kind == "skew":
            return K.skew_line_cover(_need(side, kind))
        if kind == "concentric-circles":
            return K.concentric_circle_cover(_need(side, kind))
        if kind == "strict-peel":
            return K.strictly_convex_peel(_need(side, kind))
        return K.algebraic_bundle_cover(_need(side, kind), cfg.k or 1)
    except ValueError as exc:
        raise UsageError(str(exc))


def _need(side, kind):
    if side is None:
        raise UsageError(f"{kind} needs --n (or a square --grid)")
    return side


def cmd_construct(cfg: RunConfig) -> int:
    cover = _construct(cfg)
    ok, diag = verify_cover(cover)
    out = {"construction": cfg.kind, "count": len(cover), "verified": ok, "points": len(cover.pointset)}
    if not ok:
        out["diagnostics"] = diag
    if cfg.json_out:
        out["cover"] = cover.to_json()
    _emit(out)
    if cfg.svg and cover.pointset.d == 2:
        _write_svg(cfg.svg, render_cover(cover))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_tile(cfg: RunConfig) -> int:
    if not cfg.shape:
        raise UsageError("tile needs a shape")
    shape = _load_shape(cfg.shape)
    kind = TILE_LIKE if shape.name in TILE_LIKE_DENSITY else EXACT
    pat = find_periodic_tiling(shape, cfg.max_period, kind)
    if pat is None:
        _emit({"shape": shape.name, "found": False, "max_period": cfg.max_period})
        return EXIT_NOT_FOUND
    out = {"shape": shape.name, "found": True, "pattern": pat.to_json(),
           "points_per_curve": str(pat.points_per_curve())}
    if cfg.n is not None:
        n = cfg.n
        clipped = clip_to_grid(pat, n)
        _, best = best_clip(shape, n, min(4, cfg.max_period), kind)
        out["n"] = n
        out["count"] = len(clipped)
        out["best_count"] = len(best)
        out["lower"] = small_curve_lower(shape, n)
        if shape.name in TILE_BOUNDS:
            text, f = TILE_BOUNDS[shape.name]
            out["bound"] = {"formula": text, "value": f(n), "holds": len(clipped) <= f(n)}
        if cfg.json_out:
            out["cover"] = clipped.to_json()
        if cfg.svg:
            _write_svg(cfg.svg, render_cover(clipped))
    elif cfg.svg:
        _write_svg(cfg.svg, render_tiling(pat))
    _emit(out)
    return EXIT_OK


def cmd_reproduce(cfg: RunConfig) -> int:
    from .reproduce import CHECKS, format_table, run

    keys = cfg.only or list(CHECKS)
    unknown = [k for k in keys if k not in CHECKS]
    if unknown:
        raise UsageError(f"unknown criteria {unknown}; choose from {', '.join(CHECKS)}")
    results = []
    for k in keys:
        r = run(k)
        results.append(r)
        if not cfg.json_out:
            print(format_table([r]).rsplit("\n", 1)[0], flush=True)
    if cfg.json_out:
        _emit({"results": [r.to_json() for r in results], "passed": all(r.passed for r in results)})
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria pass")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_render(cfg: RunConfig) -> int:
    if not cfg.inputs:
        raise UsageError("render needs an input JSON file")
    src = cfg.inputs[0]
    out = cfg.svg or (Path(cfg.inputs[1]) if len(cfg.inputs) > 1 else None)
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text(encoding="utf-8")
        obj = json.loads(text)
        if isinstance(obj, dict) and "cover" in obj and "curves" not in obj:
            obj = obj["cover"]
        elif isinstance(obj, dict) and "pattern" in obj and "placements" not in obj:
            obj = obj["pattern"]
        svg = render_json(obj)
    except OSError as exc:
        raise DataError(f"cannot read {src}: {exc}")
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise DataError(f"malformed scene JSON: {exc}")
    if out is None:
        sys.stdout.write(svg)
    else:
        _write_svg(out, svg)
    return EXIT_OK


def cmd_converse(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise UsageError("converse needs --n")
    try:
        P, L = build_counterexample(cfg.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    out = {
        "n": cfg.n,
        "points": len(P),
        "lines": len(L),
        "star_property": check_star_property(P, L),
        "max_collinear": max_collinear(P),
        "points_per_line": sorted(set(points_per_line(P, L))),
    }
    if cfg.json_out:
        out["pointset"] = P.to_json()
        out["lineset"] = L.to_json()
    _emit(out)
    if cfg.svg:
        _write_svg(cfg.svg, render_cover(Cover(P, [])))
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve, "construct": cmd_construct, "tile": cmd_tile,
    "reproduce": cmd_reproduce, "render": cmd_render, "converse": cmd_converse,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gridcover", description="Minimum curve covers of grids and related constructions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="include full JSON objects in the output")
        sp.add_argument("--svg", metavar="PATH", help="also write an SVG scene")
        sp.add_argument("--threads", type=int, help="worker processes (default: GRIDCOVER_THREADS or 1)")

    s = sub.add_parser("solve", help="exact minimum cover of a grid")
    s.add_argument("--grid", required=True, help="e.g. 5x5 or 3x3x3")
    s.add_argument("--family", required=True)
    s.add_argument("--max-inner-corners", type=int)
    s.add_argument("--degree", type=int)
    s.add_argument("--radius2", help="squared radius for fixed-radius-circle, e.g. 2 or 5/4")
    s.add_argument("--shape", help="shape name or JSON file for fixed-shape")
    s.add_argument("--time-budget", type=float, help="seconds before falling back to bounds")
    s.add_argument("--nodes", type=int, help="search node budget")
    common(s)

    c = sub.add_parser("construct", help="explicit covers")
    c.add_argument("kind", choices=CONSTRUCTIONS)
    c.add_argument("--grid")
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    common(c)

    t = sub.add_parser("tile", help="periodic tiling search and clipped covers")
    t.add_argument("shape_pos", nargs="?", metavar="SHAPE")
    t.add_argument("--shape", help="shape name or JSON file with offsets")
    t.add_argument("--max-period", type=int)
    t.add_argument("--n", type=int, help="clip to the n x n grid")
    common(t)

    r = sub.add_parser("reproduce", help="run the reproduction table")
    r.add_argument("--only", action="append", help="criterion keys, comma separated")
    common(r)

    rd = sub.add_parser("render", help="render Cover / TilingPattern / PointSet JSON to SVG")
    rd.add_argument("inputs", nargs="+", metavar="FILE", help="input JSON ('-' for stdin) and optional output SVG")
    rd.add_argument("--svg", metavar="PATH")

    v = sub.add_parser("converse", help="n^2 points with n per line and no other collinear triple")
    v.add_argument("--n", type=int, required=True)
    common(v)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"gridcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"gridcover: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CapExceeded as exc:
        _emit({"error": "cap exceeded", "report": str(exc)})
        return EXIT_BOUNDS


if __name__ == "__main__":
    sys.exit(main())
