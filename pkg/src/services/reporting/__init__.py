"""Table rendering, file output and golden comparison."""

from src.services.reporting.golden import check_golden, diff_lines, golden_path
from src.services.reporting.tables import TABLES, fmt6, render_table, spectrum_rows, summary
from src.services.reporting.writers import (
    csv_text,
    models_csv,
    tsv_text,
    write_lines,
    write_model,
    write_models,
    write_text,
)

__all__ = [
    "TABLES",
    "check_golden",
    "csv_text",
    "diff_lines",
    "fmt6",
    "golden_path",
    "models_csv",
    "render_table",
    "spectrum_rows",
    "summary",
    "tsv_text",
    "write_lines",
    "write_model",
    "write_models",
    "write_text",
]
