"""Pydantic export schemas."""

from src.models.schemas.graph import GraphExport
from src.models.schemas.report import (
    CheckResult,
    ConjectureRow,
    CountingRow,
    VerifyReport,
)
from src.models.schemas.spectrum import (
    EigenvalueRow,
    LedgerRow,
    OracleRow,
    SpectrumExport,
)

__all__ = [
    "GraphExport",
    "CheckResult",
    "ConjectureRow",
    "CountingRow",
    "VerifyReport",
    "EigenvalueRow",
    "LedgerRow",
    "OracleRow",
    "SpectrumExport",
]
