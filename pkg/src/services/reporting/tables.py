"""Reproducible eigenvalue and ledger tables."""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.services.assembly.assembler import assemble
from src.services.assembly.records import EigenType, SpectrumTable, expected_ledger
from src.services.oracle.laplacian import BoundaryCondition
from src.services.reporting.writers import csv_text

SPECTRUM_HEADER = ("value", "multiplicity", "type")
LEDGER_HEADER = ("level", "localized", "primitive_sym", "primitive_skew", "miniaturized", "total")

_TYPE_ORDER = {t: i for i, t in enumerate(EigenType)}


class TableKind(str, Enum):
    SPECTRUM = "spectrum"
    LEDGER = "ledger"


@dataclass(frozen=True)
class TableSpec:
    name: str
    kind: TableKind
    bc: BoundaryCondition
    levels: Tuple[int, ...]

    @property
    def golden_name(self) -> str:
        return self.name.replace("-", "_") + ".csv"


TABLES = {
    entry.name: entry
    for entry in (
        *(
            TableSpec(f"dirichlet-m{m}", TableKind.SPECTRUM, BoundaryCondition.DIRICHLET, (m,))
            for m in range(2, 6)
        ),
        TableSpec("ledger-dirichlet", TableKind.LEDGER, BoundaryCondition.DIRICHLET, (2, 3, 4, 5)),
        TableSpec("ledger-neumann", TableKind.LEDGER, BoundaryCondition.NEUMANN, (1, 2, 3, 4, 5)),
    )
}


def fmt6(value: float) -> str:
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def spectrum_rows(table: SpectrumTable) -> List[Tuple[str, int, str]]:
    """
    One row per distinct (rounded value, type) pair.

    Rows sort by the rounded value and then by type, so near-ties of
    different types keep a fixed order.
    """
    merged: dict = {}
    for rec in table.records:
        key = (fmt6(rec.value), rec.etype)
        merged[key] = merged.get(key, 0) + rec.multiplicity
    ordered = sorted(merged.items(), key=lambda kv: (float(kv[0][0]), _TYPE_ORDER[kv[0][1]]))
    return [(value, mult, etype.value) for (value, etype), mult in ordered]


def ledger_rows(bc: BoundaryCondition, levels: Sequence[int], assembled: bool = True):
    """Ledger rows; with ``assembled`` the counts come from the classified tables."""
    rows = []
    for m in levels:
        ledger = assemble(m, bc).ledger if assembled else expected_ledger(m, bc)
        rows.append((m, *ledger.as_tuple()))
    return rows


def render_table(name: str, assembled: bool = True) -> str:
    """
    CSV text of a named table.

    Raises:
        KeyError: unknown table name
    """
    entry = TABLES[name]
    if entry.kind is TableKind.LEDGER:
        return csv_text(LEDGER_HEADER, ledger_rows(entry.bc, entry.levels, assembled))
    return csv_text(SPECTRUM_HEADER, spectrum_rows(assemble(entry.levels[0], entry.bc)))


def summary(name: str, text: Optional[str] = None) -> str:
    """One-line description: row count and, for spectra, the total dimension."""
    text = render_table(name) if text is None else text
    rows = text.strip("\n").split("\n")[1:]
    if TABLES[name].kind is TableKind.LEDGER:
        return f"{name}: {len(rows)} levels"
    dims = sum(int(r.split(",")[1]) for r in rows)
    return f"{name}: {dims} dimensions across {len(rows)} lines"
