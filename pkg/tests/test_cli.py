"""End-to-end runs of the command-line driver, mostly in-process."""

import json
import re
import subprocess
import sys

import pytest

from anosovlab.cli import main

LAM_CAT = "2.61803398874989484820458683436563811772"

# 36 significant digits, scientific notation
FIELD = re.compile(r"^-?\d\.\d{35}e[+-]\d{2,}$")


def _run(argv):
    return main(argv)


def _read_csv(path):
    """(comments, columns, rows) from one of our CSV files."""
    comments, header, rows = [], None, []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                comments.append(line)
            elif header is None:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return comments, header, rows


class TestGrid:
    def test_cat_map_grid(self, tmp_path):
        out = tmp_path / "grid.csv"
        rc = _run(["grid", "--mu", "0", "--alpha", "0", "--n1", "2", "--n2", "2",
                   "--orbit-len", "60", "--threads", "1", "--out", str(out)])
        assert rc == 0
        comments, header, rows = _read_csv(out)
        assert comments[0] == "# schema_version: 1"
        assert comments[1].startswith("# generator: anosovlab")
        assert "# command: grid" in comments
        assert header == ["theta1", "theta2", "lambda_u"]
        assert len(rows) == 4
        for row in rows:
            for field in row:
                assert FIELD.match(field), field
            # golden-mean rate everywhere on the unperturbed map
            assert row[2] == rows[0][2]
        assert abs(float(rows[0][2]) - float(LAM_CAT)) < 1e-15

    def test_provenance_omits_execution_details(self, tmp_path):
        out = tmp_path / "grid.csv"
        _run(["grid", "--n1", "1", "--n2", "1", "--orbit-len", "10",
              "--threads", "2", "--out", str(out)])
        comments, _, _ = _read_csv(out)
        text = "\n".join(comments)
        assert "threads" not in text
        assert str(out) not in text
        for key in ("mu", "alpha", "precision_bits", "orbit_len", "n1", "n2"):
            assert f"# {key}: " in text

    def test_stdout_default(self, capsys):
        rc = _run(["grid", "--mu", "0", "--alpha", "0", "--n1", "1", "--n2", "1",
                   "--orbit-len", "10", "--threads", "1"])
        assert rc == 0
        captured = capsys.readouterr().out
        assert captured.startswith("# schema_version: 1\n")
        assert captured.endswith("\n")


class TestExitCodes:
    def test_bad_mu(self, capsys):
        assert _run(["grid", "--mu", "1.2", "--n1", "1", "--n2", "1", "--threads", "1"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_precision_below_floor(self, capsys):
        assert _run(["grid", "--prec-bits", "64", "--n1", "1", "--n2", "1",
                     "--threads", "1"]) == 2

    def test_bad_difference_order(self, capsys):
        assert _run(["diff", "--order", "3", "--h", "1e-4", "--n1", "1", "--n2", "1",
                     "--threads", "1"]) == 2

    def test_offset_below_floor(self, capsys):
        rc = _run(["diff", "--order", "2", "--h", "1e-12", "--n1", "1", "--n2", "1",
                   "--threads", "1"])
        assert rc == 3
        assert "minimum usable h" in capsys.readouterr().err

    def test_unwritable_output(self, capsys):
        rc = _run(["grid", "--mu", "0", "--alpha", "0", "--n1", "1", "--n2", "1",
                   "--orbit-len", "10", "--threads", "1",
                   "--out", "/nonexistent-dir/grid.csv"])
        assert rc == 4

    def test_hscan_h_ref_ordering(self, capsys):
        rc = _run(["hscan", "--n", "1", "--h-min", "1e-4", "--h-max", "1e-2",
                   "--h-ref", "1e-3", "--threads", "1"])
        assert rc == 2

    def test_manifold_max_points(self, capsys):
        rc = _run(["manifold", "--which", "unstable", "--max-points", "1",
                   "--threads", "1"])
        assert rc == 2

    def test_argparse_rejects_unknown_choice(self):
        with pytest.raises(SystemExit) as exc_info:
            _run(["manifold", "--which", "sideways", "--threads", "1"])
        assert exc_info.value.code == 2


class TestVerify:
    def test_reference_map(self, capsys):
        rc = _run(["verify", "--threads", "1"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "8/8 checks passed" in out
        assert out.count("[PASS]") == 8


class TestRate:
    def test_single_point(self, tmp_path):
        out = tmp_path / "rate.csv"
        rc = _run(["rate", "--theta1", "0.25", "--theta2", "0.5",
                   "--orbit-len", "100", "--threads", "1", "--out", str(out)])
        assert rc == 0
        _, header, rows = _read_csv(out)
        assert header == ["theta1", "theta2", "lambda_u", "lambda_s",
                          "eu1", "eu2", "es1", "es2", "residual_u", "residual_s"]
        assert len(rows) == 1
        lam_u, lam_s = float(rows[0][2]), float(rows[0][3])
        assert lam_u > 1 > lam_s > 0
        assert float(rows[0][8]) < 1e-25 and float(rows[0][9]) < 1e-25


class TestDiff:
    def test_cat_map_first_difference_is_exactly_zero(self, tmp_path):
        out = tmp_path / "diff.csv"
        rc = _run(["diff", "--mu", "0", "--alpha", "0", "--order", "1", "--h", "1e-4",
                   "--n1", "2", "--n2", "2", "--orbit-len", "40",
                   "--threads", "1", "--out", str(out)])
        assert rc == 0
        _, header, rows = _read_csv(out)
        assert header == ["theta1", "theta2", "value"]
        for row in rows:
            assert float(row[2]) == 0.0


class TestHscan:
    def test_small_sweep_layout(self, tmp_path):
        out = tmp_path / "hscan.csv"
        rc = _run(["hscan", "--n", "1", "--h-min", "1e-4", "--h-max", "1e-2",
                   "--points-per-decade", "1", "--h-ref", "1e-8",
                   "--orbit-len", "50", "--threads", "1", "--out", str(out)])
        assert rc == 0
        _, header, rows = _read_csv(out)
        assert header == ["theta1", "theta2", "h", "d1", "d1_minus_ref_abs",
                          "d2", "d2_over_abs_ln_h", "fitted_slope", "highlight"]
        # 1 grid point + 5 highlighted points, 3 offsets each
        assert len(rows) == 18
        assert [row[8] for row in rows] == ["0"] * 3 + ["1"] * 15
        for start in range(0, 18, 3):
            hs = [float(rows[start + k][2]) for k in range(3)]
            assert hs == sorted(hs, reverse=True)
            assert hs[0] == pytest.approx(1e-2) and hs[-1] == pytest.approx(1e-4)


class TestManifold:
    def test_trace_layout(self, tmp_path):
        out = tmp_path / "manifold.csv"
        rc = _run(["manifold", "--which", "both", "--spacing", "0.05",
                   "--max-points", "40", "--threads", "1", "--out", str(out)])
        assert rc == 0
        _, header, rows = _read_csv(out)
        assert header == ["which", "param", "theta1", "theta2", "break_flag"]
        assert rows[0][0] == "fixed_point"
        assert len(rows) == 1 + 2 * 40
        labels = {row[0] for row in rows}
        assert labels == {"fixed_point", "unstable", "stable"}
        assert all(row[4] in ("0", "1") for row in rows)


class TestDeterminism:
    def test_grid_thread_count_invariance(self, tmp_path):
        outs = []
        for i, threads in enumerate(("1", "2")):
            out = tmp_path / f"grid{i}.csv"
            rc = _run(["grid", "--n1", "3", "--n2", "3", "--orbit-len", "60",
                       "--threads", threads, "--out", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_hscan_thread_count_invariance(self, tmp_path):
        outs = []
        for i, threads in enumerate(("1", "2")):
            out = tmp_path / f"scan{i}.csv"
            rc = _run(["hscan", "--n", "1", "--h-min", "1e-3", "--h-max", "1e-2",
                       "--h-ref", "1e-8", "--orbit-len", "40",
                       "--threads", threads, "--out", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestJson:
    def test_document_shape(self, tmp_path):
        out = tmp_path / "grid.json"
        rc = _run(["grid", "--mu", "0", "--alpha", "0", "--n1", "2", "--n2", "1",
                   "--orbit-len", "20", "--threads", "1", "--format", "json",
                   "--out", str(out)])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["schema_version"] == 1
        assert doc["columns"] == ["theta1", "theta2", "lambda_u"]
        assert len(doc["rows"]) == 2
        prov = doc["provenance"]
        for key in ("command", "mu", "alpha", "precision_bits", "orbit_len"):
            assert key in prov
        assert prov["command"] == "grid"


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "anosovlab", "rate", "--theta1", "0.1", "--theta2", "0.2",
         "--orbit-len", "20", "--threads", "1"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("# schema_version: 1\n")
