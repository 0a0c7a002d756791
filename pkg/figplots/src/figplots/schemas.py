"""Readers for the anosovlab CSV files.

Every anosovlab output starts with '#'-prefixed provenance comments
(schema_version, generator, command, run configuration) followed by a header
line and data rows.  Figures declare which command's schema they consume;
anything else is rejected up front with a message naming what is wrong, so a
bad plot can never be traced back to silently mis-read data.
"""

from __future__ import annotations

from dataclasses import dataclass


class SchemaError(ValueError):
    """Input file does not conform to the expected anosovlab CSV schema."""


SUPPORTED_SCHEMA_VERSION = "1"

COLUMNS = {
    "rate": [
        "theta1", "theta2", "lambda_u", "lambda_s",
        "eu1", "eu2", "es1", "es2", "residual_u", "residual_s",
    ],
    "grid": ["theta1", "theta2", "lambda_u"],
    "diff": ["theta1", "theta2", "value"],
    "hscan": [
        "theta1", "theta2", "h", "d1", "d1_minus_ref_abs",
        "d2", "d2_over_abs_ln_h", "fitted_slope", "highlight",
    ],
    "manifold": ["which", "param", "theta1", "theta2", "break_flag"],
}


@dataclass(frozen=True)
class Table:
    """One parsed CSV file: provenance comments, header, raw string rows."""

    path: str
    meta: dict[str, str]
    columns: list[str]
    rows: list[list[str]]

    @property
    def command(self) -> str:
        return self.meta.get("command", "")

    def column(self, name: str) -> list[str]:
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise SchemaError(f"{self.path}: no column {name!r}") from None
        return [row[idx] for row in self.rows]

    def floats(self, name: str) -> list[float]:
        out = []
        for i, cell in enumerate(self.column(name)):
            try:
                out.append(float(cell))
            except ValueError:
                raise SchemaError(
                    f"{self.path}: row {i + 1}, column {name!r}: not a number: {cell!r}"
                ) from None
        return out


def read_table(path: str) -> Table:
    meta: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[str]] = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].partition(":")
                if sep:
                    meta[key.strip()] = value.strip()
                continue
            if columns is None:
                columns = line.split(",")
                continue
            row = line.split(",")
            if len(row) != len(columns):
                raise SchemaError(
                    f"{path}: row {len(rows) + 1} has {len(row)} fields, header has {len(columns)}"
                )
            rows.append(row)
    version = meta.get("schema_version")
    if version is None:
        raise SchemaError(f"{path}: missing '# schema_version' comment; not an anosovlab CSV?")
    if version != SUPPORTED_SCHEMA_VERSION:
        raise SchemaError(f"{path}: schema_version {version} not supported (expected 1)")
    command = meta.get("command")
    if command not in COLUMNS:
        raise SchemaError(f"{path}: unknown command {command!r} in provenance")
    if columns is None:
        raise SchemaError(f"{path}: no header line")
    expected = COLUMNS[command]
    if columns != expected:
        for name in expected:
            if name not in columns:
                raise SchemaError(f"{path}: missing column {name!r} for command {command!r}")
        for name in columns:
            if name not in expected:
                raise SchemaError(f"{path}: unexpected column {name!r} for command {command!r}")
        raise SchemaError(
            f"{path}: columns out of order for command {command!r}: got {columns}"
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return Table(path=path, meta=meta, columns=columns, rows=rows)


def require_command(table: Table, command: str, figure_id: str) -> Table:
    if table.command != command:
        raise SchemaError(
            f"{table.path}: {figure_id} needs a {command!r} file, got {table.command!r}"
        )
    return table


def require_meta(table: Table, key: str, value: str, figure_id: str) -> Table:
    got = table.meta.get(key)
    if got != value:
        raise SchemaError(
            f"{table.path}: {figure_id} needs {key} = {value}, got {got!r}"
        )
    return table
