"""Schema validation: good files parse, every corruption is named."""

import pytest

from figplots import SchemaError, read_table
from figplots.schemas import require_command, require_meta


def test_reads_every_schema(corpus):
    for key, expected_cmd in [
        ("grid", "grid"), ("diff1", "diff"), ("hscan", "hscan"),
        ("manifold", "manifold"), ("rate", "rate"),
    ]:
        table = read_table(corpus[key])
        assert table.command == expected_cmd
        assert table.meta["schema_version"] == "1"
        assert len(table.rows) >= 1
        assert "mu" in table.meta and "precision_bits" in table.meta


def test_float_extraction(corpus):
    table = read_table(corpus["grid"])
    lams = table.floats("lambda_u")
    assert len(lams) == 6 * 5
    assert all(lam > 1 for lam in lams)


def test_missing_schema_comment(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("theta1,theta2,lambda_u\n1.0e+00,0.0e+00,2.0e+00\n")
    with pytest.raises(SchemaError, match="schema_version"):
        read_table(bad)


def test_renamed_column_is_named(corpus, tmp_path):
    text = corpus["grid"].read_text().replace("lambda_u", "lambda")
    bad = tmp_path / "renamed.csv"
    bad.write_text(text)
    with pytest.raises(SchemaError, match="lambda_u"):
        read_table(bad)


def test_extra_column_is_named(corpus, tmp_path):
    lines = corpus["grid"].read_text().splitlines()
    out = []
    for line in lines:
        if line.startswith("#"):
            out.append(line)
        else:
            out.append(line + ("," + ("extra" if line.startswith("theta1") else "0")))
    bad = tmp_path / "extra.csv"
    bad.write_text("\n".join(out) + "\n")
    with pytest.raises(SchemaError, match="extra"):
        read_table(bad)


def test_empty_data_rejected(corpus, tmp_path):
    lines = [
        line for line in corpus["grid"].read_text().splitlines()
        if line.startswith("#") or line.startswith("theta1")
    ]
    bad = tmp_path / "empty.csv"
    bad.write_text("\n".join(lines) + "\n")
    with pytest.raises(SchemaError, match="no data rows"):
        read_table(bad)


def test_ragged_row_rejected(corpus, tmp_path):
    bad = tmp_path / "ragged.csv"
    bad.write_text(corpus["grid"].read_text() + "1.0e-01,2.0e-01\n")
    with pytest.raises(SchemaError, match="fields"):
        read_table(bad)


def test_command_and_meta_requirements(corpus):
    grid = read_table(corpus["grid"])
    with pytest.raises(SchemaError, match="fig1 needs a 'manifold' file"):
        require_command(grid, "manifold", "fig1")
    diff2 = read_table(corpus["diff2"])
    with pytest.raises(SchemaError, match="order"):
        require_meta(diff2, "order", "1", "fig2b")
