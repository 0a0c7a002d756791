"""Command-line wrapper behavior and exit codes."""

import subprocess
import sys

import pytest

from figplots.cli import main


def test_render_via_cli(corpus, tmp_path):
    out = tmp_path / "fig1.png"
    rc = main(["fig1", "--in", str(corpus["manifold"]), "--out", str(out), "--no-timestamp"])
    assert rc == 0
    assert out.stat().st_size > 0


def test_overlay_inputs(corpus, tmp_path):
    out = tmp_path / "fig1.png"
    rc = main([
        "fig1", "--in", str(corpus["manifold"]), "--in", str(corpus["manifold"]),
        "--out", str(out),
    ])
    assert rc == 0


def test_schema_mismatch_exit_code(corpus, tmp_path, capsys):
    rc = main(["fig1", "--in", str(corpus["grid"]), "--out", str(tmp_path / "x.png")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path, capsys):
    rc = main(["fig2a", "--in", str(tmp_path / "none.csv"), "--out", str(tmp_path / "x.png")])
    assert rc == 4


def test_unknown_figure_id_rejected_by_parser(corpus, tmp_path):
    with pytest.raises(SystemExit) as exc_info:
        main(["fig9", "--in", str(corpus["grid"]), "--out", str(tmp_path / "x.png")])
    assert exc_info.value.code == 2


def test_console_script(corpus, tmp_path):
    out = tmp_path / "fig2a.png"
    proc = subprocess.run(
        [sys.executable, "-m", "figplots.cli", "fig2a",
         "--in", str(corpus["grid"]), "--out", str(out)],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.stat().st_size > 0
