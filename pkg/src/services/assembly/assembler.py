"""Classified graph spectra of Omega_m and their checks.

The Dirichlet spectrum S_m and the Neumann spectrum S^N_m are the union of
localized, symmetric primitive, skew primitive and miniaturized
eigenspaces. Each part is generated independently. Nearby values of
different records are certified distinct or certified equal (the Neumann
value 6 belongs to all four types), then the table is checked against the
closed-form ledgers and, on demand, against the dense eigensolver.
"""

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from src.core.config import settings
from src.core.exceptions import InvalidLevelError, SpectraException, TheoryViolationError
from src.models.schemas.report import CheckResult
from src.observability.logging import LogContext, get_logger, log_stage
from src.observability.metrics import metrics
from src.services.assembly.localized import (
    continuation_words,
    initial_multiplicity,
    localized_graph_eigenvalues,
)
from src.services.assembly.records import (
    EigenType,
    EigenvalueRecord,
    Ledger,
    SpectrumTable,
    dimension,
    expected_ledger,
)
from src.services.assembly.separation import check_disjoint
from src.services.decimation.maps import Branch, BranchSequence
from src.services.graphs.builder import build_omega
from src.services.oracle.jacobi import OracleSpectrum, eigensolve
from src.services.oracle.laplacian import BoundaryCondition, laplacian_matrix
from src.services.primitive.families import FamilyName, expected_degree
from src.services.primitive.roots import RootEntry, RootTable, isolate_family_roots

logger = get_logger(__name__)

LEDGERS = "ledgers"
ORACLE = "oracle"

ASSEMBLE_LEVEL_CAP = 5


def first_level(bc: BoundaryCondition) -> int:
    return 2 if bc is BoundaryCondition.DIRICHLET else 1


def _check_range(m: int, bc: BoundaryCondition) -> None:
    if m < first_level(bc):
        raise InvalidLevelError(m, f"{bc.value} spectra start at level {first_level(bc)}")


def primitive_family(bc: BoundaryCondition, skew: bool) -> FamilyName:
    if bc is BoundaryCondition.NEUMANN:
        return FamilyName.PTILDEN if skew else FamilyName.PN
    return FamilyName.PTILDE if skew else FamilyName.P


def branch_sequence(table: RootTable, entry: RootEntry) -> Tuple[BranchSequence, Dict[int, float]]:
    """
    Weak branch sequence of a root back to its generation of birth.

    Returns:
        The sequence, oldest branch first, and the known root value at each
        level from birth to the table level
    """
    known = {table.level: entry.value}
    branches: List[Branch] = []
    level = table.level
    while entry.parent is not None and entry.branch is not None:
        branches.append(entry.branch)
        level -= 1
        entry = isolate_family_roots(table.family, level).roots[entry.parent - 1]
        known[level] = entry.value
    sequence = BranchSequence(
        m0=level, start=entry.value, branches=tuple(reversed(branches)), weak=True
    )
    return sequence, known


def _primitive_records(table: RootTable, etype: EigenType) -> List[EigenvalueRecord]:
    records = []
    for entry in table.roots:
        sequence, _ = branch_sequence(table, entry)
        records.append(
            EigenvalueRecord(
                level=table.level,
                value=entry.value,
                multiplicity=1,
                etype=etype,
                birth=sequence.m0,
                branch_word=sequence.word,
                interval=entry.interval,
                family=table.family,
                sequence=sequence,
            )
        )
    return records


def primitive_graph_eigenvalues(
    m: int, bc: BoundaryCondition, skew: bool = False
) -> List[EigenvalueRecord]:
    """
    Symmetric or skew primitive eigenvalues of Omega_m, each of multiplicity 1.

    Raises:
        InvalidLevelError: m below the first level of ``bc``
        TheoryViolationError: propagated from root isolation
    """
    _check_range(m, bc)
    family = primitive_family(bc, skew)
    etype = EigenType.PRIMITIVE_SKEW if skew else EigenType.PRIMITIVE_SYM
    return _primitive_records(isolate_family_roots(family, m), etype)


def miniaturization_sources(m: int, bc: BoundaryCondition) -> range:
    """Levels m' < m whose skew primitive eigenvalues are miniaturized into level m."""
    return range(first_level(bc), m)


def miniaturized_graph_eigenvalues(m: int, bc: BoundaryCondition) -> List[EigenvalueRecord]:
    """
    Miniaturized eigenvalues of Omega_m.

    A skew primitive eigenfunction of level m' < m contracted k = m - m'
    times fits into any of the 2^k bottom cells of level k, so its graph
    eigenvalue reappears unchanged at level m with multiplicity 2^k.
    """
    _check_range(m, bc)
    family = primitive_family(bc, skew=True)
    records = []
    for source in miniaturization_sources(m, bc):
        k = m - source
        for entry in isolate_family_roots(family, source).roots:
            records.append(
                EigenvalueRecord(
                    level=m,
                    value=entry.value,
                    multiplicity=2**k,
                    etype=EigenType.MINIATURIZED,
                    interval=entry.interval,
                    contractions=k,
                    source_level=source,
                    family=family,
                )
            )
    return records


def check_ledger(ledger: Ledger, m: int, bc: BoundaryCondition) -> None:
    """
    Raises:
        TheoryViolationError: the counts differ from the closed forms or the
            total differs from the matrix dimension
    """
    expected = expected_ledger(m, bc)
    if ledger != expected:
        raise TheoryViolationError(
            "ledger",
            f"counts {ledger.as_tuple()} differ from closed forms {expected.as_tuple()}",
            m=m,
            bc=bc.value,
        )
    if ledger.total != dimension(m, bc):
        raise TheoryViolationError(
            "ledger",
            f"total {ledger.total} differs from dimension {dimension(m, bc)}",
            m=m,
            bc=bc.value,
        )


@lru_cache(maxsize=None)
def assemble(m: int, bc: BoundaryCondition) -> SpectrumTable:
    """
    Full classified spectrum of Omega_m.

    Args:
        m: Level, at least 2 (Dirichlet) or 1 (Neumann)
        bc: Boundary condition

    Returns:
        Records sorted by value, with the verified ledger

    Raises:
        TheoryViolationError: ledger mismatch or coinciding types
    """
    _check_range(m, bc)
    started = time.perf_counter()
    with LogContext(m=m, bc=bc):
        log_stage(logger, "ASSEMBLE")
        records = (
            localized_graph_eigenvalues(m, bc)
            + primitive_graph_eigenvalues(m, bc, skew=False)
            + primitive_graph_eigenvalues(m, bc, skew=True)
            + miniaturized_graph_eigenvalues(m, bc)
        )
        records.sort(key=lambda r: r.value)
        shared = check_disjoint(records, m, bc)
        ledger = Ledger.from_records(records)
        check_ledger(ledger, m, bc)
        log_stage(
            logger,
            "ASSEMBLE",
            "completed",
            records=len(records),
            shared=shared,
            total=ledger.total,
            duration=time.perf_counter() - started,
        )
    return SpectrumTable(level=m, bc=bc, records=tuple(records), ledger=ledger)


def counted_ledger(m: int, bc: BoundaryCondition) -> Ledger:
    """
    Ledger from the generation rules alone, without isolating any root.

    Localized dimensions come from the birth multiplicities and admissible
    words, primitive and miniaturized ones from the family degrees.
    """
    localized = sum(
        initial_multiplicity(series, m0, bc) * sum(1 for _ in continuation_words(series, m - m0))
        for m0 in range(1, m + 1)
        for series in (5, 6)
    )
    skew = primitive_family(bc, skew=True)
    return Ledger(
        localized=localized,
        primitive_sym=expected_degree(primitive_family(bc, skew=False), m),
        primitive_skew=expected_degree(skew, m),
        miniaturized=sum(
            2 ** (m - s) * expected_degree(skew, s) for s in miniaturization_sources(m, bc)
        ),
    )


@lru_cache(maxsize=None)
def oracle_spectrum(m: int, bc: BoundaryCondition, method: Optional[str] = None) -> OracleSpectrum:
    """Dense eigensolve of the level-m domain matrix."""
    if bc is BoundaryCondition.DIRICHLET and m < 1:
        raise InvalidLevelError(m, "domain graphs start at level 1")
    return eigensolve(laplacian_matrix(build_omega(m), bc), method=method)


@dataclass(frozen=True)
class OracleComparison:
    level: int
    bc: BoundaryCondition
    classified: int
    oracle: int
    max_deviation: float
    mismatches: Tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def compare_with_oracle(
    table: SpectrumTable, oracle: OracleSpectrum, tol: Optional[float] = None
) -> OracleComparison:
    """
    Compare a classified spectrum with the eigensolver as multisets.

    Both sides are flattened by multiplicity and sorted, so a cluster of
    near-equal values is matched as a whole.
    """
    tol = settings.TOL_ORACLE if tol is None else tol
    ours = table.flat_values()
    theirs = [float(v) for v in oracle.eigenvalues]
    mismatches = []
    if len(ours) != len(theirs):
        mismatches.append(f"dimension {len(ours)} != {len(theirs)}")
    deviation = 0.0
    for i, (a, b) in enumerate(zip(ours, theirs), start=1):
        deviation = max(deviation, abs(a - b))
        if abs(a - b) > tol:
            mismatches.append(f"#{i}: classified {a:.9f} oracle {b:.9f}")
    return OracleComparison(
        level=table.level,
        bc=table.bc,
        classified=len(ours),
        oracle=len(theirs),
        max_deviation=deviation,
        mismatches=tuple(mismatches),
    )


def _check(suite: str, name: str, passed: bool, detail: str = "", **context) -> CheckResult:
    metrics.record_check(suite, passed)
    return CheckResult(suite=suite, name=name, passed=passed, detail=detail, context=context)


def _ledger_text(ledger: Ledger) -> str:
    return "({}, {}, {}, {}; {})".format(*ledger.as_tuple())


def verify_ledgers(m_max: int) -> List[CheckResult]:
    """
    Ledger identities up to ``m_max`` for both boundary conditions.

    The closed forms are checked to sum to the matrix dimension and to match
    the generation rules at every level; tables up to level 5 are also
    assembled and their counted ledgers compared.
    """
    out = []
    for bc in BoundaryCondition:
        for m in range(first_level(bc), m_max + 1):
            expected = expected_ledger(m, bc)
            name = f"{bc.value} ledger m={m}"
            out.append(
                _check(
                    LEDGERS,
                    f"{name} total",
                    expected.total == dimension(m, bc),
                    f"{expected.total} = {dimension(m, bc)}",
                )
            )
            counted = counted_ledger(m, bc)
            out.append(
                _check(LEDGERS, f"{name} counts", counted == expected, _ledger_text(counted))
            )
            if m <= ASSEMBLE_LEVEL_CAP:
                try:
                    table = assemble(m, bc)
                    out.append(
                        _check(LEDGERS, f"{name} assembled", True, _ledger_text(table.ledger))
                    )
                except SpectraException as exc:
                    out.append(_check(LEDGERS, f"{name} assembled", False, exc.message))
    return out


def verify_oracle(m_max: int, method: Optional[str] = None) -> List[CheckResult]:
    """Classified spectra against the eigensolver for levels up to min(m_max, 5)."""
    out = []
    for bc in BoundaryCondition:
        for m in range(first_level(bc), min(m_max, ASSEMBLE_LEVEL_CAP) + 1):
            name = f"{bc.value} m={m}"
            try:
                result = compare_with_oracle(assemble(m, bc), oracle_spectrum(m, bc, method))
            except SpectraException as exc:
                out.append(_check(ORACLE, name, False, exc.message))
                continue
            detail = (
                f"{result.classified} values, max deviation {result.max_deviation:.1e}"
                if result.passed
                else "; ".join(result.mismatches[:5])
            )
            out.append(_check(ORACLE, name, result.passed, detail))
    return out
