"""Command-line interface: ``starindex <subcommand> [flags] <inputs>``.

Each run prints one JSON report on stdout.  With ``--out-dir`` the report
(and any polygon it produces) is also written there; ``--render`` adds an
SVG figure of the same run.

Exit codes: 0 ok, 1 input/parse error, 2 invalid geometry, 3 not
star-shaped, 4 zero convexity index, 5 solver failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from . import plotting
from .brouwer import DEFAULT_LAMBDAS, TOL_EIG, check_dichotomy, eigencurve, eigencurve_convex
from .errors import InputError, StarIndexError
from .gauge_index import TOL_GLOBAL, TOL_INDEX, GaugeEvaluator, Which, convexity_index_at, convexity_index_global, gauge, resolve_center
from .geometry import StarPolygon, convex_hull
from .star_kernel import kernel
from .metric import Euclidean, SeminormFamily, densify
from .records import dumps, read_map, read_polygon, read_seminorms, write_atomic

log = logging.getLogger("starindex")


@dataclass
class RunConfig:
    subcommand: str
    inputs: List[str]
    tol: Optional[float] = None
    lambdas: Sequence[float] = DEFAULT_LAMBDAS
    out_dir: Optional[Path] = None
    render: bool = False
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InputError.exit_code, f"{self.prog}: error: {message}\n")


def parse_lambda_grid(text: str) -> tuple:
    """``"20"`` means {k/20 : k = 1..20}; otherwise a comma-separated list."""
    text = text.strip()
    try:
        if text.isdigit():
            n = int(text)
            if n < 1:
                raise ValueError
            return tuple(k / n for k in range(n, 0, -1))
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise InputError(f"bad lambda grid {text!r}") from exc
    if not vals or any(not (0 < v <= 1) for v in vals):
        raise InputError("lambda values must lie in (0, 1]")
    return vals


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive, help="override the subcommand's tolerance")
    common.add_argument("--render", action="store_true", help="write an SVG figure")
    common.add_argument("--out-dir", type=Path, help="directory for report, polygon and figure files")
    common.add_argument("--lambda-grid", default=None, help='lambda values: "N" for k/N or a comma list')
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="starindex", description="Star kernels, convexity indices and eigencurves of planar sets.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("kernel", parents=[common], help="star kernel and star-shapedness")
    p.add_argument("polygon")

    p = sub.add_parser("index", parents=[common], help="convexity index at p, or its kernel-wide maximum")
    p.add_argument("polygon")
    p.add_argument("--p", nargs=2, type=float, metavar=("X", "Y"))
    p.add_argument("--global", dest="global_", action="store_true")

    p = sub.add_parser("gauge", parents=[common], help="gauges of S and co(S) about p at a point")
    p.add_argument("polygon")
    p.add_argument("--x", nargs=2, type=float, metavar=("X", "Y"), required=True)
    p.add_argument("--p", nargs=2, type=float, metavar=("X", "Y"))

    p = sub.add_parser("densify", parents=[common], help="nearby set with positive index")
    p.add_argument("polygon")
    p.add_argument("--seminorms", help="seminorm family file (default: euclidean only)")
    p.add_argument("--eps", type=float, nargs="+", required=True,
                   help="one value for every seminorm, or one per seminorm")
    p.add_argument("--p", nargs=2, type=float, metavar=("X", "Y"))

    p = sub.add_parser("dichotomy", parents=[common], help="fixed center or eigen family")
    p.add_argument("polygon")
    p.add_argument("map")
    p.add_argument("--p", nargs=2, type=float, metavar=("X", "Y"))
    p.add_argument("--n-lambda", type=_count, default=20)

    p = sub.add_parser("eigencurve", parents=[common], help="trace x_lambda over a lambda grid")
    p.add_argument("polygon")
    p.add_argument("map")
    p.add_argument("--p", nargs=2, type=float, metavar=("X", "Y"))
    p.add_argument("--convex", action="store_true", help="convex set: scan for p that f moves, index 1")
    return parser


def _emit(cfg: RunConfig, name: str, record: dict, extra_files: Optional[dict] = None) -> None:
    text = dumps(record)
    sys.stdout.write(text)
    if cfg.out_dir is not None:
        write_atomic(cfg.out_dir / f"{name}.json", text)
        for fname, rec in (extra_files or {}).items():
            write_atomic(cfg.out_dir / fname, dumps(rec))


def _figure_path(cfg: RunConfig, name: str) -> Path:
    return (cfg.out_dir or Path(".")) / f"{name}.svg"


def cmd_kernel(cfg: RunConfig, args) -> int:
    S = read_polygon(args.polygon)
    K = kernel(S, cfg.tol) if cfg.tol else kernel(S)
    extra = {}
    if K.polygon is not None:
        extra["kernel_polygon.json"] = K.polygon.to_record()
    _emit(cfg, "kernel", K.to_record(), extra)
    if cfg.render:
        plotting.render_kernel(S, K, _figure_path(cfg, "kernel"))
    return 0


def cmd_index(cfg: RunConfig, args) -> int:
    S = read_polygon(args.polygon)
    if args.global_:
        rep = convexity_index_global(S, cfg.tol or TOL_GLOBAL)
    else:
        p = resolve_center(S, args.p)
        rep = convexity_index_at(S, p, cfg.tol or TOL_INDEX)
    _emit(cfg, "index", rep.to_record())
    if cfg.render:
        plotting.render_index(S, convex_hull(S), rep, _figure_path(cfg, "index"))
    return 0


def cmd_gauge(cfg: RunConfig, args) -> int:
    S = read_polygon(args.polygon)
    ev = GaugeEvaluator.build(S, resolve_center(S, args.p))
    x = tuple(args.x)
    rec = {
        "kind": "gauge",
        "p": list(ev.center),
        "x": list(x),
        "star": gauge(ev, x, Which.STAR),
        "hull": gauge(ev, x, Which.HULL),
    }
    _emit(cfg, "gauge", rec)
    return 0


def cmd_densify(cfg: RunConfig, args) -> int:
    S = read_polygon(args.polygon)
    family = read_seminorms(args.seminorms) if args.seminorms else SeminormFamily((Euclidean(),))
    eps = list(args.eps)
    if len(eps) == 1:
        eps = eps * len(family)
    if len(eps) != len(family):
        raise InputError(f"{len(eps)} eps values for {len(family)} seminorms")
    res = densify(S, resolve_center(S, args.p), list(zip(family, eps)))
    _emit(cfg, "densify", res.to_record(), {"densified_polygon.json": res.s_prime.to_record()})
    if cfg.render:
        plotting.render_densify(S, res, convex_hull(S), _figure_path(cfg, "densify"))
    return 0


def cmd_dichotomy(cfg: RunConfig, args) -> int:
    S = read_polygon(args.polygon)
    f = read_map(args.map)
    star = StarPolygon(S, resolve_center(S, args.p))
    verdict = check_dichotomy(star, f, args.n_lambda, cfg.tol or TOL_EIG)
    _emit(cfg, "dichotomy", verdict.to_record())
    if cfg.render:
        plotting.render_eigencurve(S, convex_hull(S), verdict.curve, _figure_path(cfg, "dichotomy"),
                                   verdict.branch.value)
    return 0


def cmd_eigencurve(cfg: RunConfig, args) -> int:
    S = read_polygon(args.polygon)
    f = read_map(args.map)
    tol = cfg.tol or TOL_EIG
    if args.convex:
        curve = eigencurve_convex(S, f, cfg.lambdas, tol)
    else:
        star = StarPolygon(S, resolve_center(S, args.p))
        curve = eigencurve(star, f, cfg.lambdas, tol)
    _emit(cfg, "eigencurve", curve.to_record())
    if cfg.render:
        plotting.render_eigencurve(S, convex_hull(S), curve, _figure_path(cfg, "eigencurve"))
    return 0


COMMANDS = {
    "kernel": cmd_kernel,
    "index": cmd_index,
    "gauge": cmd_gauge,
    "densify": cmd_densify,
    "dichotomy": cmd_dichotomy,
    "eigencurve": cmd_eigencurve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(
            subcommand=args.subcommand,
            inputs=[v for k, v in vars(args).items() if k in ("polygon", "map", "seminorms") and v],
            tol=args.tol,
            lambdas=parse_lambda_grid(args.lambda_grid) if args.lambda_grid else DEFAULT_LAMBDAS,
            out_dir=args.out_dir,
            render=args.render,
        )
        return COMMANDS[args.subcommand](cfg, args)
    except StarIndexError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
