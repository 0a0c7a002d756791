"""Publication-style figures from anosovlab CSV files."""

__version__ = "0.1.0"

from .render import FIGURE_IDS, FigureJob, render
from .schemas import COLUMNS, SchemaError, Table, read_table

__all__ = [
    "__version__",
    "FIGURE_IDS",
    "FigureJob",
    "render",
    "COLUMNS",
    "SchemaError",
    "Table",
    "read_table",
]
