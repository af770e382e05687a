"""Classified eigenvalue records, ledgers and spectrum tables."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from src.models.schemas.spectrum import EigenvalueRow, LedgerRow, SpectrumExport
from src.services.graphs.builder import interior_count, vertex_count
from src.services.decimation.maps import BranchSequence
from src.services.oracle.laplacian import BoundaryCondition
from src.services.poly.interval import RootInterval
from src.services.primitive.families import FamilyName


class EigenType(str, Enum):
    LOCALIZED = "L"
    PRIMITIVE_SYM = "P+"
    PRIMITIVE_SKEW = "P-"
    MINIATURIZED = "M"


@dataclass(frozen=True)
class EigenvalueRecord:
    """
    One eigenvalue with its multiplicity and provenance.

    ``level`` is None for limit eigenvalues. Localized records carry their
    series (5 or 6), generation of birth and branch word; primitive records
    carry the isolating interval, their family and the bracket word since
    birth; miniaturized records carry the contraction count and the level
    of their skew source. Limit records, and primitive records, carry the
    branch sequence their value was followed along.
    """

    level: Optional[int]
    value: float
    multiplicity: int
    etype: EigenType
    series: Optional[int] = None
    birth: Optional[int] = None
    branch_word: str = ""
    interval: Optional[RootInterval] = None
    contractions: int = 0
    source_level: Optional[int] = None
    error: float = 0.0
    family: Optional[FamilyName] = None
    sequence: Optional[BranchSequence] = None

    @property
    def is_polynomial(self) -> bool:
        return self.interval is not None

    def to_row(self, index: int) -> EigenvalueRow:
        lo = hi = None
        if self.interval is not None:
            lo, hi = str(self.interval.lo), str(self.interval.hi)
        return EigenvalueRow(
            index=index,
            value=self.value,
            multiplicity=self.multiplicity,
            type=self.etype.value,
            series=self.series,
            birth=self.birth,
            branch_word=self.branch_word,
            interval_lo=lo,
            interval_hi=hi,
            sequence=self.sequence.to_text() if self.sequence is not None else None,
        )


@dataclass(frozen=True)
class Ledger:
    """Eigenspace dimensions by type."""

    localized: int
    primitive_sym: int
    primitive_skew: int
    miniaturized: int

    @property
    def total(self) -> int:
        return self.localized + self.primitive_sym + self.primitive_skew + self.miniaturized

    def as_tuple(self) -> Tuple[int, int, int, int, int]:
        return (
            self.localized,
            self.primitive_sym,
            self.primitive_skew,
            self.miniaturized,
            self.total,
        )

    @classmethod
    def from_records(cls, records: Iterable[EigenvalueRecord]) -> "Ledger":
        counts = {t: 0 for t in EigenType}
        for rec in records:
            counts[rec.etype] += rec.multiplicity
        return cls(
            localized=counts[EigenType.LOCALIZED],
            primitive_sym=counts[EigenType.PRIMITIVE_SYM],
            primitive_skew=counts[EigenType.PRIMITIVE_SKEW],
            miniaturized=counts[EigenType.MINIATURIZED],
        )

    def to_row(self, level: int, bc: BoundaryCondition) -> LedgerRow:
        return LedgerRow(
            level=level,
            bc=bc.value,
            localized=self.localized,
            primitive_sym=self.primitive_sym,
            primitive_skew=self.primitive_skew,
            miniaturized=self.miniaturized,
            total=self.total,
        )


def expected_ledger(m: int, bc: BoundaryCondition) -> Ledger:
    """
    Closed-form dimension counts at level m.

    Dirichlet (m >= 2): the four counts sum to a_m, the interior size of
    Omega_m. Neumann (m >= 1): they sum to b_m, its vertex count.
    """
    if bc is BoundaryCondition.DIRICHLET:
        if m < 2:
            return Ledger(0, 0, 0, 0)
        return Ledger(
            localized=(3 ** (m + 1) - 1) // 2 - (m - 2) * 2**m - 13 * 2 ** (m - 2),
            primitive_sym=2**m + 2 ** (m - 2) - 2,
            primitive_skew=2**m - 2,
            miniaturized=(m - 3) * 2**m + 4,
        )
    return Ledger(
        localized=(3 ** (m + 1) + 1) // 2 - (m + 1) * 2**m - 1,
        primitive_sym=2**m,
        primitive_skew=2**m - 1,
        miniaturized=(m - 2) * 2**m + 2,
    )


def dimension(m: int, bc: BoundaryCondition) -> int:
    """a_m for Dirichlet, b_m for Neumann."""
    return interior_count(m) if bc is BoundaryCondition.DIRICHLET else vertex_count(m)


@dataclass(frozen=True)
class SpectrumTable:
    level: int
    bc: BoundaryCondition
    records: Tuple[EigenvalueRecord, ...]
    ledger: Ledger = field(default_factory=lambda: Ledger(0, 0, 0, 0))

    @property
    def dimension(self) -> int:
        return sum(r.multiplicity for r in self.records)

    def flat_values(self) -> List[float]:
        """Every eigenvalue repeated by its multiplicity, ascending."""
        return sorted(r.value for r in self.records for _ in range(r.multiplicity))

    def of_type(self, etype: EigenType) -> List[EigenvalueRecord]:
        return [r for r in self.records if r.etype is etype]

    def rows(self) -> List[EigenvalueRow]:
        out = []
        index = 1
        for rec in self.records:
            out.append(rec.to_row(index))
            index += rec.multiplicity
        return out

    def export(self) -> SpectrumExport:
        return SpectrumExport(
            level=self.level,
            bc=self.bc.value,
            rows=self.rows(),
            ledger=self.ledger.to_row(self.level, self.bc),
        )
