"""Command-line driver: verification, rate evaluation, grids, difference
scans, and manifold traces, written as deterministic CSV (or JSON).

Output files embed full run provenance as '#' comment lines so downstream
plotting can validate what it reads.  Execution details that do not affect
values (thread count, output path) are deliberately left out of the
provenance: runs with identical configuration are byte-identical regardless
of parallelism.

Exit codes: 0 ok, 2 invalid configuration, 3 offset below the precision
floor, 4 I/O failure, 5 invariant failure (verification or tracing).
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from . import __version__
from .blaschke import MapParams, TorusPoint, fixed_point
from .extprec import (
    DomainError,
    ParameterError,
    PrecisionMixError,
    Real,
    format_sci,
    real,
    set_precision,
)
from .manifolds import NonHyperbolicError, SpacingUnreachableError, trace_manifold
from .regularity import (
    GridSpec,
    PrecisionFloorError,
    _check_offset,
    _ScanJob,
    decade_offsets,
    diff1,
    diff2,
    expansion_grid,
    grid_points,
    highlight_points,
)
from .splitting import compute_sample
from .verify import format_report, run_all

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECISION = 3
EXIT_IO = 4
EXIT_INVARIANT = 5

SCHEMA_VERSION = 1

# Layered command defaults: the reference preset pins the full-size runs
# (100x100 rate grids, 40x40 offset scans, h = 1e-4, h_ref = 1e-16); plain
# invocations get desk-sized grids for interactive use.
_DEFAULTS = {
    None: {
        "grid_n1": 20, "grid_n2": 20,
        "diff_order": 2, "diff_h": "1e-4", "diff_n1": 20, "diff_n2": 20,
        "hscan_n": 10, "h_min": "1e-10", "h_max": "1e-2",
        "points_per_decade": 1, "h_ref": "1e-16",
        "which": "both", "seed_eps": "1e-8", "spacing": "1e-3", "max_points": 10000,
    },
    "reference": {
        "grid_n1": 100, "grid_n2": 100,
        "diff_order": 2, "diff_h": "1e-4", "diff_n1": 100, "diff_n2": 100,
        "hscan_n": 40, "h_min": "1e-10", "h_max": "1e-2",
        "points_per_decade": 1, "h_ref": "1e-16",
        "which": "both", "seed_eps": "1e-8", "spacing": "1e-3", "max_points": 100000,
    },
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide settings shared by every subcommand."""

    mu: Real
    alpha: Real
    precision_bits: int
    orbit_len: int
    threads: int
    output_path: str | None
    format: str

    def __post_init__(self):
        if self.precision_bits < 113:
            raise ParameterError(f"precision_bits must be >= 113, got {self.precision_bits}")
        if self.orbit_len < 1:
            raise ParameterError(f"orbit_len must be >= 1, got {self.orbit_len}")
        if self.threads < 1:
            raise ParameterError(f"threads must be >= 1, got {self.threads}")
        if self.format not in ("csv", "json"):
            raise ParameterError(f"format must be csv or json, got {self.format!r}")
        if not (0 <= self.mu < 1):
            raise ParameterError(f"mu must lie in [0, 1), got {self.mu}")

    def map_params(self) -> MapParams:
        return MapParams(self.mu, self.alpha)

    def provenance(self) -> dict[str, str]:
        return {
            "mu": format_sci(self.mu),
            "alpha": format_sci(self.alpha),
            "precision_bits": str(self.precision_bits),
            "orbit_len": str(self.orbit_len),
        }


def _pool_init(bits: int) -> None:
    set_precision(bits)


def parallel_map(fn, items, threads: int, precision_bits: int) -> list:
    """Order-preserving map, forked across `threads` workers when > 1.

    Results are assembled in input order whatever the scheduling, which is
    what makes the output files thread-count independent.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    methods = multiprocessing.get_all_start_methods()
    ctx = multiprocessing.get_context("fork" if "fork" in methods else "spawn")
    chunk = max(1, len(items) // (threads * 4))
    with ctx.Pool(threads, initializer=_pool_init, initargs=(precision_bits,)) as pool:
        return pool.map(fn, items, chunksize=chunk)


def _emit(config: RunConfig, command: str, extra: dict[str, str], columns: list[str], rows) -> None:
    prov = {"command": command, **config.provenance(), **extra}
    if config.format == "csv":
        lines = [f"# schema_version: {SCHEMA_VERSION}", f"# generator: anosovlab {__version__}"]
        lines += [f"# {k}: {v}" for k, v in prov.items()]
        lines.append(",".join(columns))
        lines += [",".join(row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "generator": f"anosovlab {__version__}",
            "provenance": prov,
            "columns": columns,
            "rows": [list(row) for row in rows],
        }
        text = json.dumps(doc, indent=2) + "\n"
    if config.output_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)


class _DiffJob:
    """Picklable single-offset difference evaluator for pool workers."""

    def __init__(self, params: MapParams, order: int, h: Real, L: int, axis: int):
        self.params = params
        self.order = order
        self.h = h
        self.L = L
        self.axis = axis

    def __call__(self, p: TorusPoint) -> Real:
        fn = diff1 if self.order == 1 else diff2
        return fn(self.params, p, self.h, self.L, self.axis)


def cmd_verify(config: RunConfig) -> int:
    params = config.map_params()
    results = run_all(params, orbit_len=config.orbit_len)
    report = format_report(results)
    print(report)
    if config.output_path not in (None, "-"):
        with open(config.output_path, "w", newline="") as fh:
            fh.write(report + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVARIANT


def cmd_rate(config: RunConfig, theta1: Real, theta2: Real) -> int:
    params = config.map_params()
    s = compute_sample(params, TorusPoint(theta1, theta2), config.orbit_len)
    columns = [
        "theta1", "theta2", "lambda_u", "lambda_s",
        "eu1", "eu2", "es1", "es2", "residual_u", "residual_s",
    ]
    row = [format_sci(v) for v in (
        s.point.theta1, s.point.theta2, s.lambda_u, s.lambda_s,
        s.e_u.x, s.e_u.y, s.e_s.x, s.e_s.y, s.residual_u, s.residual_s,
    )]
    _emit(config, "rate", {}, columns, [row])
    return EXIT_OK


def cmd_grid(config: RunConfig, n1: int, n2: int) -> int:
    params = config.map_params()

    def pmap(fn, xs):
        return parallel_map(fn, xs, config.threads, config.precision_bits)

    data = expansion_grid(params, GridSpec(n1, n2), config.orbit_len, map_fn=pmap)
    rows = (
        [format_sci(p.theta1), format_sci(p.theta2), format_sci(lam)]
        for p, lam in data
    )
    extra = {"n1": str(n1), "n2": str(n2)}
    _emit(config, "grid", extra, ["theta1", "theta2", "lambda_u"], rows)
    return EXIT_OK


def cmd_diff(config: RunConfig, order: int, h: Real, n1: int, n2: int, axis: int = 2) -> int:
    params = config.map_params()
    if order not in (1, 2):
        raise ParameterError(f"difference order must be 1 or 2, got {order}")
    _check_offset(h, order)  # reject floor violations before forking workers
    pts = grid_points(GridSpec(n1, n2))
    job = _DiffJob(params, order, h, config.orbit_len, axis)
    values = parallel_map(job, pts, config.threads, config.precision_bits)
    extra = {"order": str(order), "h": format_sci(h), "n1": str(n1), "n2": str(n2), "axis": str(axis)}
    rows = (
        [format_sci(p.theta1), format_sci(p.theta2), format_sci(v)]
        for p, v in zip(pts, values)
    )
    _emit(config, "diff", extra, ["theta1", "theta2", "value"], rows)
    return EXIT_OK


def cmd_hscan(
    config: RunConfig,
    n: int,
    h_min: Real,
    h_max: Real,
    points_per_decade: int,
    h_ref: Real,
    axis: int = 2,
) -> int:
    params = config.map_params()
    if not h_ref < h_min:
        raise ParameterError(f"h_ref = {h_ref} must be smaller than h_min = {h_min}")
    _check_offset(h_min, 2)  # reject floor violations before forking workers
    hs = decade_offsets(h_max, h_min, points_per_decade)
    marked = highlight_points()
    pts = grid_points(GridSpec(n, n)) + marked
    tags = [0] * (n * n) + [1] * len(marked)
    job = _ScanJob(params, hs, h_ref, config.orbit_len)
    scans = parallel_map(job, pts, config.threads, config.precision_bits)
    columns = [
        "theta1", "theta2", "h", "d1", "d1_minus_ref_abs",
        "d2", "d2_over_abs_ln_h", "fitted_slope", "highlight",
    ]

    def rows():
        for scan, tag in zip(scans, tags):
            slope = scan.fitted_slope if scan.fitted_slope is not None else mpfr("nan")
            for rec in scan.records:
                yield [
                    format_sci(scan.point.theta1),
                    format_sci(scan.point.theta2),
                    format_sci(rec.h),
                    format_sci(rec.d1),
                    format_sci(abs(rec.d1 - scan.d1_ref)),
                    format_sci(rec.d2),
                    format_sci(rec.d2 / abs(gmpy2.log(rec.h))),
                    format_sci(slope),
                    str(tag),
                ]

    extra = {
        "n": str(n),
        "h_min": format_sci(h_min),
        "h_max": format_sci(h_max),
        "points_per_decade": str(points_per_decade),
        "h_ref": format_sci(h_ref),
        "axis": str(axis),
    }
    _emit(config, "hscan", extra, columns, rows())
    return EXIT_OK


def cmd_manifold(
    config: RunConfig, which: str, seed_eps: Real, spacing: Real, max_points: int
) -> int:
    params = config.map_params()
    if which not in ("stable", "unstable", "both"):
        raise ParameterError(f"which must be stable, unstable or both, got {which!r}")
    if max_points < 2:
        raise ParameterError(f"max_points must be >= 2, got {max_points}")
    star = fixed_point(params)
    columns = ["which", "param", "theta1", "theta2", "break_flag"]
    all_rows = [[
        "fixed_point", format_sci(mpfr(0)),
        format_sci(star.theta1), format_sci(star.theta2), "0",
    ]]
    branches = ("unstable", "stable") if which == "both" else (which,)
    for branch in branches:
        curve = trace_manifold(params, branch, seed_eps, spacing, max_points)
        for t, p, brk in zip(curve.params, curve.points, curve.breaks):
            all_rows.append([
                branch, format_sci(t),
                format_sci(p.theta1), format_sci(p.theta2), str(int(brk)),
            ])
    extra = {
        "which": which,
        "seed_eps": format_sci(seed_eps),
        "spacing": format_sci(spacing),
        "max_points": str(max_points),
    }
    _emit(config, "manifold", extra, columns, all_rows)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", default=None, help="deformation size in [0,1) (default 0.7)")
    common.add_argument("--alpha", default=None, help="deformation phase (default 0.3)")
    common.add_argument("--prec-bits", type=int, default=113, help="working precision (>= 113)")
    common.add_argument("--orbit-len", type=int, default=200, help="power-iteration length L")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: CPU count)")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument(
        "--preset", choices=("reference",), default=None,
        help="pin the full-size reference runs (100x100 grids, 40x40 scans, h=1e-4, h_ref=1e-16)",
    )

    parser = argparse.ArgumentParser(prog="anosovlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[common], help="run the invariant suites")

    p_rate = sub.add_parser("rate", parents=[common], help="splitting data at one point")
    p_rate.add_argument("--theta1", required=True)
    p_rate.add_argument("--theta2", required=True)

    p_grid = sub.add_parser("grid", parents=[common], help="expansion-rate field on a grid")
    p_grid.add_argument("--n1", type=int, default=None)
    p_grid.add_argument("--n2", type=int, default=None)

    p_diff = sub.add_parser("diff", parents=[common], help="difference-quotient field at fixed h")
    p_diff.add_argument("--order", type=int, default=None)
    p_diff.add_argument("--h", default=None)
    p_diff.add_argument("--n1", type=int, default=None)
    p_diff.add_argument("--n2", type=int, default=None)
    p_diff.add_argument("--axis", type=int, default=2, choices=(1, 2))

    p_hscan = sub.add_parser("hscan", parents=[common], help="offset sweep of both quotients")
    p_hscan.add_argument("--n", type=int, default=None)
    p_hscan.add_argument("--h-min", default=None)
    p_hscan.add_argument("--h-max", default=None)
    p_hscan.add_argument("--points-per-decade", type=int, default=None)
    p_hscan.add_argument("--h-ref", default=None)
    p_hscan.add_argument("--axis", type=int, default=2, choices=(1, 2))

    p_man = sub.add_parser("manifold", parents=[common], help="trace fixed-point manifolds")
    p_man.add_argument("--which", choices=("stable", "unstable", "both"), default=None)
    p_man.add_argument("--seed-eps", default=None)
    p_man.add_argument("--spacing", default=None)
    p_man.add_argument("--max-points", type=int, default=None)

    return parser


def _resolved(args, key: str, cast=None):
    """Command parameter: explicit flag, else preset default, else plain default."""
    attr = key.replace("-", "_")
    val = getattr(args, attr, None)
    if val is None:
        val = _DEFAULTS[args.preset][key]
    return cast(val) if cast is not None else val


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        set_precision(args.prec_bits)
        threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
        config = RunConfig(
            mu=real(args.mu if args.mu is not None else "0.7"),
            alpha=real(args.alpha if args.alpha is not None else "0.3"),
            precision_bits=args.prec_bits,
            orbit_len=args.orbit_len,
            threads=threads,
            output_path=args.out,
            format=args.format,
        )
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "rate":
            return cmd_rate(config, real(args.theta1), real(args.theta2))
        if args.command == "grid":
            n1 = _resolved(args, "grid_n1") if args.n1 is None else args.n1
            n2 = _resolved(args, "grid_n2") if args.n2 is None else args.n2
            return cmd_grid(config, n1, n2)
        if args.command == "diff":
            order = args.order if args.order is not None else _DEFAULTS[args.preset]["diff_order"]
            h = real(args.h if args.h is not None else _DEFAULTS[args.preset]["diff_h"])
            n1 = args.n1 if args.n1 is not None else _DEFAULTS[args.preset]["diff_n1"]
            n2 = args.n2 if args.n2 is not None else _DEFAULTS[args.preset]["diff_n2"]
            return cmd_diff(config, order, h, n1, n2, args.axis)
        if args.command == "hscan":
            n = args.n if args.n is not None else _DEFAULTS[args.preset]["hscan_n"]
            h_min = real(args.h_min if args.h_min is not None else _DEFAULTS[args.preset]["h_min"])
            h_max = real(args.h_max if args.h_max is not None else _DEFAULTS[args.preset]["h_max"])
            ppd = (
                args.points_per_decade
                if args.points_per_decade is not None
                else _DEFAULTS[args.preset]["points_per_decade"]
            )
            h_ref = real(args.h_ref if args.h_ref is not None else _DEFAULTS[args.preset]["h_ref"])
            return cmd_hscan(config, n, h_min, h_max, ppd, h_ref, args.axis)
        if args.command == "manifold":
            which = args.which if args.which is not None else _DEFAULTS[args.preset]["which"]
            seed_eps = real(
                args.seed_eps if args.seed_eps is not None else _DEFAULTS[args.preset]["seed_eps"]
            )
            spacing = real(
                args.spacing if args.spacing is not None else _DEFAULTS[args.preset]["spacing"]
            )
            max_points = (
                args.max_points
                if args.max_points is not None
                else _DEFAULTS[args.preset]["max_points"]
            )
            return cmd_manifold(config, which, seed_eps, spacing, max_points)
        raise ParameterError(f"unknown command {args.command!r}")
    except PrecisionFloorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ParameterError, DomainError, PrecisionMixError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SpacingUnreachableError, NonHyperbolicError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
