"""Comparison of regenerated tables with the checked-in golden files."""

import difflib
from pathlib import Path
from typing import List

from src.core.exceptions import GoldenMismatchError
from src.observability.logging import get_logger
from src.observability.metrics import metrics
from src.services.reporting.tables import TABLES

logger = get_logger(__name__)

GOLDEN = "golden"


def golden_path(golden_dir: Path, name: str) -> Path:
    return golden_dir / TABLES[name].golden_name


def diff_lines(expected: str, actual: str, name: str = "table") -> List[str]:
    """Changed lines of a unified diff, without headers or context."""
    diff = difflib.unified_diff(
        expected.splitlines(),
        actual.splitlines(),
        fromfile=f"golden/{name}",
        tofile=name,
        lineterm="",
        n=0,
    )
    return [
        line
        for line in diff
        if line[:1] in "+-" and not line.startswith(("+++", "---"))
    ]


def check_golden(name: str, text: str, golden_dir: Path) -> None:
    """
    Raises:
        GoldenMismatchError: the golden file is missing or differs from ``text``
    """
    path = golden_path(golden_dir, name)
    if not path.exists():
        metrics.record_check(GOLDEN, False)
        raise GoldenMismatchError(name, [f"missing golden file {path}"])
    differences = diff_lines(path.read_text(encoding="utf-8"), text, name)
    metrics.record_check(GOLDEN, not differences)
    if differences:
        raise GoldenMismatchError(name, differences)
    logger.info("Golden table reproduced", extra={"table": name})
