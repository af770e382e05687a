"""Deterministic file output: UTF-8, LF endings, temp file then rename."""

import csv
import io
import os
from pathlib import Path
from typing import Iterable, List, Literal, Sequence, Type

from pydantic import BaseModel

from src.observability.logging import get_logger

logger = get_logger(__name__)

OutputFormat = Literal["csv", "json"]


def write_text(path: Path, text: str) -> Path:
    """Atomically replace ``path`` with ``text``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)
    logger.debug("Wrote file", extra={"path": str(path), "bytes": len(text)})
    return path


def csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def tsv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    lines = ["\t".join(header)]
    lines.extend("\t".join(str(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _cell(value: object) -> object:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return value


def models_csv(model: Type[BaseModel], rows: Sequence[BaseModel]) -> str:
    """CSV with one column per model field, in declaration order."""
    fields = list(model.model_fields)
    return csv_text(fields, ([_cell(getattr(r, f)) for f in fields] for r in rows))


def models_json(rows: Sequence[BaseModel]) -> str:
    return "[" + ",\n".join(r.model_dump_json() for r in rows) + "]\n"


def write_models(
    path: Path,
    model: Type[BaseModel],
    rows: Sequence[BaseModel],
    fmt: OutputFormat = "csv",
) -> Path:
    """Write export rows as CSV or JSON; the suffix of ``path`` follows ``fmt``."""
    path = path.with_suffix(f".{fmt}")
    text = models_csv(model, rows) if fmt == "csv" else models_json(rows)
    return write_text(path, text)


def write_model(path: Path, row: BaseModel) -> Path:
    return write_text(path, row.model_dump_json(indent=2) + "\n")


def write_lines(path: Path, lines: List[str]) -> Path:
    return write_text(path, "".join(f"{line}\n" for line in lines))
