#!/usr/bin/env python3
"""Produce the reference dataset and render all six figures from it.

Drives the two installed command-line tools end to end: anosovlab writes the
CSV files (rate grid, first/second difference fields, offset sweep, manifold
traces), then figplots turns them into fig1..fig3b.  The full reference run
takes several minutes single-threaded; --quick swaps in desk-size grids for a
fast end-to-end check with identical plumbing.
"""

import argparse
import subprocess
import sys
from pathlib import Path

FULL = {
    "grid.csv": ["grid", "--preset", "reference"],
    "diff1.csv": ["diff", "--preset", "reference", "--order", "1"],
    "diff2.csv": ["diff", "--preset", "reference", "--order", "2"],
    "hscan.csv": ["hscan", "--preset", "reference"],
    "manifold.csv": ["manifold", "--preset", "reference", "--max-points", "20000"],
}

QUICK = {
    "grid.csv": ["grid", "--n1", "40", "--n2", "40", "--orbit-len", "60"],
    "diff1.csv": ["diff", "--order", "1", "--h", "1e-4", "--n1", "30", "--n2", "30",
                  "--orbit-len", "60"],
    "diff2.csv": ["diff", "--order", "2", "--h", "1e-4", "--n1", "30", "--n2", "30",
                  "--orbit-len", "60"],
    "hscan.csv": ["hscan", "--n", "6", "--h-min", "1e-8", "--h-max", "1e-2",
                  "--h-ref", "1e-12", "--orbit-len", "60"],
    "manifold.csv": ["manifold", "--spacing", "5e-3", "--max-points", "3000"],
}

FIGURES = {
    "fig1": "manifold.csv",
    "fig2a": "grid.csv",
    "fig2b": "diff1.csv",
    "fig2c": "diff2.csv",
    "fig3a": "hscan.csv",
    "fig3b": "hscan.csv",
}


def run(args: list[str]) -> None:
    print("+", " ".join(args), flush=True)
    subprocess.run(args, check=True)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="reference_runs")
    parser.add_argument("--quick", action="store_true",
                        help="desk-size grids instead of the full reference preset")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--format", choices=("png", "svg", "pdf"), default="png")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    threads = ["--threads", str(args.threads)] if args.threads is not None else []

    for name, cmd in (QUICK if args.quick else FULL).items():
        run(["anosovlab", *cmd, *threads, "--out", str(out / name)])
    for figure_id, source in FIGURES.items():
        run(["figplots", figure_id, "--in", str(out / source),
             "--out", str(out / f"{figure_id}.{args.format}"), "--no-timestamp"])
    print(f"done: {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
