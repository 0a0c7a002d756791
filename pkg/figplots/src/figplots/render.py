"""Figure builders.

Six figure ids, each tied to one anosovlab CSV schema:

  fig1   manifold trace: stable branch blue, unstable bronze, marker at the
         fixed point; break_flag starts a new polyline so torus wraps do not
         draw spurious chords
  fig2a  lambda_u heat map over [0,1)^2 (grid schema)
  fig2b  first difference quotient heat map (diff schema, order 1)
  fig2c  second difference quotient heat map (diff schema, order 2)
  fig3a  log-log |d1 - d1_ref| vs h, grid points blue, highlights bronze
  fig3b  semi-log d2/|ln h| vs h, same coloring

Rendering is read-only and deterministic: a fixed svg hash salt plus the
no-timestamp option make repeated renders byte-identical.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import SchemaError, Table, read_table, require_command, require_meta

FIGURE_IDS = ("fig1", "fig2a", "fig2b", "fig2c", "fig3a", "fig3b")

BLUE = "#1f77b4"
BRONZE = "#b08d57"

plt.rcParams["svg.hashsalt"] = "figplots"


@dataclass(frozen=True)
class FigureJob:
    """One figure to render: input CSVs, which figure, where to write it."""

    input_paths: tuple[str, ...]
    figure_id: str
    output_path: str

    def __post_init__(self):
        object.__setattr__(self, "input_paths", tuple(self.input_paths))
        if self.figure_id not in FIGURE_IDS:
            raise SchemaError(
                f"unknown figure_id {self.figure_id!r}; expected one of {', '.join(FIGURE_IDS)}"
            )
        if not self.input_paths:
            raise SchemaError(f"{self.figure_id}: no input files given")


def _single_input(job: FigureJob) -> str:
    if len(job.input_paths) != 1:
        raise SchemaError(
            f"{job.figure_id} takes exactly one input file, got {len(job.input_paths)}"
        )
    return job.input_paths[0]


def _segments(table: Table, which: str) -> list[tuple[list[float], list[float]]]:
    """Polyline segments of one branch, split at break flags."""
    segs: list[tuple[list[float], list[float]]] = []
    xs: list[float] = []
    ys: list[float] = []
    for w, t1, t2, brk in zip(
        table.column("which"),
        table.floats("theta1"),
        table.floats("theta2"),
        table.column("break_flag"),
    ):
        if w != which:
            continue
        if brk == "1" and xs:
            segs.append((xs, ys))
            xs, ys = [], []
        xs.append(t1)
        ys.append(t2)
    if xs:
        segs.append((xs, ys))
    return segs


def _fig1(job: FigureJob):
    tables = [require_command(read_table(p), "manifold", job.figure_id) for p in job.input_paths]
    fig, ax = plt.subplots(figsize=(5.2, 5.2), dpi=150)
    styles = {"stable": (BLUE, "stable"), "unstable": (BRONZE, "unstable")}
    seen = set()
    for table in tables:
        for which, (color, label) in styles.items():
            for xs, ys in _segments(table, which):
                ax.plot(xs, ys, color=color, lw=0.9,
                        label=None if which in seen else label)
                seen.add(which)
        for w, t1, t2 in zip(
            table.column("which"), table.floats("theta1"), table.floats("theta2")
        ):
            if w == "fixed_point":
                ax.plot([t1], [t2], marker="*", ms=12, color="black", zorder=5,
                        label=None if "fp" in seen else "fixed point")
                seen.add("fp")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1)
    ax.set_aspect("equal")
    ax.set_xlabel(r"$\theta_1$")
    ax.set_ylabel(r"$\theta_2$")
    ax.legend(loc="upper right", fontsize=8)
    return fig


def _heat(job: FigureJob, command: str, value_column: str, title: str, order: str | None):
    table = require_command(read_table(_single_input(job)), command, job.figure_id)
    if order is not None:
        require_meta(table, "order", order, job.figure_id)
    try:
        n1, n2 = int(table.meta["n1"]), int(table.meta["n2"])
    except KeyError as exc:
        raise SchemaError(f"{table.path}: missing grid-shape provenance {exc}") from None
    values = table.floats(value_column)
    if len(values) != n1 * n2:
        raise SchemaError(
            f"{table.path}: {len(values)} rows but provenance says {n1} x {n2}"
        )
    field = np.array(values).reshape(n1, n2)
    fig, ax = plt.subplots(figsize=(5.6, 4.6), dpi=150)
    im = ax.imshow(
        field.T, origin="lower", extent=(0, 1, 0, 1), cmap="viridis",
        interpolation="nearest", aspect="auto",
    )
    fig.colorbar(im, ax=ax)
    ax.set_xlabel(r"$\theta_1$")
    ax.set_ylabel(r"$\theta_2$")
    ax.set_title(title, fontsize=10)
    return fig


def _scan_series(table: Table):
    """Per-point (h, row-index) series in file order: (theta-key, highlight, rows)."""
    series = []
    key = None
    for i, row in enumerate(table.rows):
        k = (row[0], row[1])
        if k != key:
            series.append((k, table.rows[i][8] == "1", []))
            key = k
        series[-1][2].append(i)
    return series


def _fig3(job: FigureJob, y_column: str, log_y: bool, y_label: str):
    table = require_command(read_table(_single_input(job)), "hscan", job.figure_id)
    hs = table.floats("h")
    ys = table.floats(y_column)
    fig, ax = plt.subplots(figsize=(5.6, 4.4), dpi=150)
    seen = set()
    # draw the blue background family first, bronze highlights on top
    for _, highlighted, idx in sorted(_scan_series(table), key=lambda s: s[1]):
        x = [hs[i] for i in idx]
        y = [ys[i] for i in idx]
        if log_y:
            pairs = [(a, b) for a, b in zip(x, y) if b > 0]
            if not pairs:
                continue
            x, y = zip(*pairs)
        color, lw, alpha, z = (
            (BRONZE, 1.8, 1.0, 3) if highlighted else (BLUE, 0.8, 0.35, 2)
        )
        label = None
        if highlighted and "hi" not in seen:
            label, _ = "highlight points", seen.add("hi")
        elif not highlighted and "grid" not in seen:
            label, _ = "grid points", seen.add("grid")
        ax.plot(x, y, color=color, lw=lw, alpha=alpha, zorder=z, label=label)
    ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    else:
        ax.axhline(0.0, color="0.7", lw=0.6, zorder=1)
    ax.set_xlabel("offset $h$")
    ax.set_ylabel(y_label)
    ax.legend(loc="best", fontsize=8)
    return fig


def render(job: FigureJob, timestamp: bool = True) -> str:
    """Render one figure; returns the output path."""
    if job.figure_id == "fig1":
        fig = _fig1(job)
    elif job.figure_id == "fig2a":
        fig = _heat(job, "grid", "lambda_u", r"local expansion rate $\lambda_u$", None)
    elif job.figure_id == "fig2b":
        fig = _heat(job, "diff", "value", "first difference quotient", "1")
    elif job.figure_id == "fig2c":
        fig = _heat(job, "diff", "value", "second difference quotient", "2")
    elif job.figure_id == "fig3a":
        fig = _fig3(job, "d1_minus_ref_abs", True,
                    r"$|\Delta\lambda_u(h) - \Delta\lambda_u(h_{\mathrm{ref}})|$")
    else:
        fig = _fig3(job, "d2_over_abs_ln_h", False, r"$\Delta_2\lambda_u / |\ln h|$")
    try:
        fig.tight_layout()
        metadata = None
        if not timestamp:
            ext = os.path.splitext(job.output_path)[1].lower()
            if ext == ".svg":
                metadata = {"Date": None}
            elif ext == ".pdf":
                metadata = {"CreationDate": None}
        fig.savefig(job.output_path, metadata=metadata)
    finally:
        plt.close(fig)
    return job.output_path
