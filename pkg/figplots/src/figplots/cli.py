"""Command-line entry: figplots <figure_id> --in data.csv [--in more.csv] --out fig.png

Exit codes: 0 ok, 2 input does not validate, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_IDS, FigureJob, render
from .schemas import SchemaError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="figplots", description=__doc__.splitlines()[0])
    parser.add_argument("figure_id", choices=FIGURE_IDS)
    parser.add_argument(
        "--in", dest="inputs", action="append", required=True, metavar="CSV",
        help="input CSV (repeat for figures that overlay several files)",
    )
    parser.add_argument("--out", required=True, help="output image path (.png/.svg/.pdf)")
    parser.add_argument(
        "--no-timestamp", action="store_true",
        help="strip embedded creation dates so repeated renders are byte-identical",
    )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = FigureJob(tuple(args.inputs), args.figure_id, args.out)
        render(job, timestamp=not args.no_timestamp)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
