"""Shared fixture: a small corpus of real anosovlab CSV files.

The files are produced by invoking the installed anosovlab command, so these
tests exercise the actual file interface rather than hand-written samples.
"""

import subprocess

import pytest

COMMON = ["--orbit-len", "40", "--threads", "1"]


def _run(args, out):
    proc = subprocess.run(
        ["anosovlab", *args, "--out", str(out)],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    return out


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("csv")
    files = {
        "grid": _run(["grid", "--n1", "6", "--n2", "5", *COMMON], d / "grid.csv"),
        "grid_flat": _run(
            ["grid", "--mu", "0", "--alpha", "0", "--n1", "4", "--n2", "4", *COMMON],
            d / "grid_flat.csv",
        ),
        "diff1": _run(
            ["diff", "--order", "1", "--h", "1e-4", "--n1", "5", "--n2", "4", *COMMON],
            d / "diff1.csv",
        ),
        "diff2": _run(
            ["diff", "--order", "2", "--h", "1e-4", "--n1", "5", "--n2", "4", *COMMON],
            d / "diff2.csv",
        ),
        "hscan": _run(
            ["hscan", "--n", "2", "--h-min", "1e-5", "--h-max", "1e-2",
             "--h-ref", "1e-9", *COMMON],
            d / "hscan.csv",
        ),
        "manifold": _run(
            ["manifold", "--which", "both", "--spacing", "0.02", "--max-points", "150",
             "--threads", "1"],
            d / "manifold.csv",
        ),
        "rate": _run(
            ["rate", "--theta1", "0.25", "--theta2", "0.5", *COMMON], d / "rate.csv"
        ),
    }
    return files
