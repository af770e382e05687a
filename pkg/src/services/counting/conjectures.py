"""Empirical experiments on the assembled Dirichlet spectra S_m.

None of these are theorems; every instance is reported as PASS or FAIL and
a failure is logged as a regression without stopping the run.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from gmpy2 import mpq

from src.core.exceptions import InvalidLevelError, SpectraException
from src.models.schemas.report import CheckResult, ConjectureRow
from src.observability.logging import LogContext, get_logger, log_event
from src.observability.metrics import metrics
from src.services.assembly.assembler import assemble
from src.services.assembly.records import EigenType, EigenvalueRecord, SpectrumTable
from src.services.assembly.separation import (
    ENCLOSURE_BITS,
    Enclosure,
    Relation,
    localized_enclosure,
    record_enclosure,
    relate,
)
from src.services.decimation.maps import Branch, phi, phi_minus_iterate
from src.services.oracle.laplacian import BoundaryCondition

logger = get_logger(__name__)

CONJECTURES = "conjectures"

RATIO_GAP = 1.2
CLUSTER_EPSILONS = (0.5, 0.1, 0.05)


def threshold_value(m: int, k: int) -> float:
    """phi_-^(m-k)(5)."""
    return phi_minus_iterate(5.0, m - k)


def _is_threshold(rec: EigenvalueRecord, m: int, k: int) -> bool:
    """The localized eigenvalue born at level k from 5 and continued by minus only."""
    return (
        rec.etype is EigenType.LOCALIZED
        and rec.series == 5
        and rec.birth == k
        and len(rec.branch_word) == m - k
        and set(rec.branch_word) <= {Branch.MINUS.value}
    )


def threshold_enclosure(m: int, k: int) -> Enclosure:
    return localized_enclosure(mpq(5), (Branch.MINUS.sign,) * (m - k), ENCLOSURE_BITS)


def _at_or_below(rec: EigenvalueRecord, m: int, k: int) -> bool:
    """
    Certified comparison of a record with phi_-^(m-k)(5).

    Raises:
        TheoryViolationError: the enclosures could be neither separated nor
            proved equal
    """
    if _is_threshold(rec, m, k):
        return True
    relation, value, threshold = relate(record_enclosure(rec), threshold_enclosure(m, k))
    if relation is Relation.SHARED:
        return True
    return value.hi < threshold.lo


def low_count(table: SpectrumTable, k: int) -> int:
    """Number of eigenvalues of ``table`` at or below phi_-^(m-k)(5), with multiplicity."""
    return sum(r.multiplicity for r in table.records if _at_or_below(r, table.level, k))


def low_count_conjecture(m: int, k: int) -> ConjectureRow:
    """
    rho_m(phi_-^(m-k)(5)) against 3^k - 2^k.

    The count is inclusive. Every value is compared with the threshold
    through certified enclosures; the threshold itself is recognized by its
    provenance.

    Raises:
        InvalidLevelError: unless 1 <= k < m and m >= 2
        TheoryViolationError: a comparison with the threshold is undecided
    """
    if not 1 <= k < m or m < 2:
        raise InvalidLevelError(m, f"needs 1 <= k < m, got k={k}")
    table = assemble(m, BoundaryCondition.DIRICHLET)
    with LogContext(k=k):
        lhs = low_count(table, k)
    return ConjectureRow(
        m=m,
        k=k,
        threshold=threshold_value(m, k),
        lhs=lhs,
        rhs=3**k - 2**k,
    )


@dataclass(frozen=True)
class Alternation:
    """P+ and P- values strictly between two consecutive localized values of different series."""

    lower: float
    upper: float
    plus: int
    minus: int

    @property
    def exempt(self) -> bool:
        return abs(self.lower - phi(Branch.MINUS, 5.0)) < 1e-9 and abs(self.upper - 3.0) < 1e-9

    @property
    def passed(self) -> bool:
        if self.exempt:
            return self.plus == 0 and self.minus == 0
        return self.plus == 1 and self.minus == 1


@dataclass(frozen=True)
class GapClusterReport:
    level: int
    ratio_gaps: Tuple[Tuple[float, float], ...]
    clusters: Dict[float, int]
    threshold_gaps: Tuple[Tuple[int, float, Optional[float]], ...]
    empty_window: int
    alternations: Tuple[Alternation, ...] = field(default_factory=tuple)

    @property
    def gaps_above_thresholds(self) -> bool:
        return all(r is not None and r >= RATIO_GAP for _, _, r in self.threshold_gaps)

    @property
    def alternation_holds(self) -> bool:
        return all(a.passed for a in self.alternations)


def _ratio_gaps(values: List[float], threshold: float) -> List[Tuple[float, float]]:
    return [
        (a, b / a) for a, b in zip(values, values[1:]) if a > 0 and b / a >= threshold
    ]


def _gap_above(values: List[float], t: float) -> Optional[float]:
    below = [v for v in values if v <= t + 1e-12]
    above = [v for v in values if v > t + 1e-12]
    if not below or not above:
        return None
    return above[0] / below[-1]


def _alternations(records: List[EigenvalueRecord]) -> List[Alternation]:
    localized = [r for r in records if r.etype is EigenType.LOCALIZED]
    out = []
    for a, b in zip(localized, localized[1:]):
        if a.series == b.series:
            continue
        inside = [r for r in records if a.value < r.value < b.value]
        out.append(
            Alternation(
                lower=a.value,
                upper=b.value,
                plus=sum(1 for r in inside if r.etype is EigenType.PRIMITIVE_SYM),
                minus=sum(1 for r in inside if r.etype is EigenType.PRIMITIVE_SKEW),
            )
        )
    return out


def gap_and_cluster_report(m: int, ratio_threshold: float = RATIO_GAP) -> GapClusterReport:
    """
    Ratio gaps, clusters below 5 and the localized/primitive alternation of S_m.

    Distinct values are the records of the assembled table; near-ties of
    different types count as separate values.
    """
    table = assemble(m, BoundaryCondition.DIRICHLET)
    records = list(table.records)
    values = [r.value for r in records]
    window = (phi(Branch.MINUS, 5.0), 3.0)
    return GapClusterReport(
        level=m,
        ratio_gaps=tuple(_ratio_gaps(values, ratio_threshold)),
        clusters={eps: sum(1 for v in values if 5.0 - eps < v < 5.0) for eps in CLUSTER_EPSILONS},
        threshold_gaps=tuple(
            (k, threshold_value(m, k), _gap_above(values, threshold_value(m, k)))
            for k in range(1, m)
        ),
        empty_window=sum(
            1
            for r in records
            if r.etype in (EigenType.PRIMITIVE_SYM, EigenType.PRIMITIVE_SKEW)
            and window[0] < r.value < window[1]
        ),
        alternations=tuple(_alternations(records)),
    )


@dataclass
class ConjectureReport:
    max_level: int
    low_counts: List[ConjectureRow] = field(default_factory=list)
    reports: List[GapClusterReport] = field(default_factory=list)
    errors: List[CheckResult] = field(default_factory=list)

    def checks(self) -> List[CheckResult]:
        out = [
            CheckResult(
                suite=CONJECTURES,
                name=f"low count m={row.m} k={row.k}",
                passed=row.passed,
                detail=f"{row.lhs} vs {row.rhs}",
                context={"threshold": row.threshold},
            )
            for row in self.low_counts
        ]
        for rep in self.reports:
            clusters = ", ".join(f"{eps}: {n}" for eps, n in rep.clusters.items())
            out.extend(
                [
                    CheckResult(
                        suite=CONJECTURES,
                        name=f"gaps above thresholds m={rep.level}",
                        passed=rep.gaps_above_thresholds,
                        detail=", ".join(
                            f"k={k} {r:.3f}" if r is not None else f"k={k} none"
                            for k, _, r in rep.threshold_gaps
                        ),
                    ),
                    CheckResult(
                        suite=CONJECTURES,
                        name=f"empty window m={rep.level}",
                        passed=rep.empty_window == 0,
                        detail=str(rep.empty_window),
                    ),
                    CheckResult(
                        suite=CONJECTURES,
                        name=f"alternation m={rep.level}",
                        passed=rep.alternation_holds,
                        detail=f"{len(rep.alternations)} pairs",
                    ),
                    CheckResult(
                        suite=CONJECTURES,
                        name=f"clusters below 5 m={rep.level}",
                        passed=True,
                        detail=clusters,
                    ),
                ]
            )
        out.extend(self.errors)
        return out


def run_conjectures(m_max: int) -> ConjectureReport:
    """
    All experiments for 2 <= m <= m_max.

    Failed instances are logged, never raised. A level whose spectrum cannot
    be assembled, or whose counts cannot be certified, is reported as one
    failed check and the remaining levels still run.
    """
    report = ConjectureReport(max_level=m_max)
    for m in range(2, m_max + 1):
        with LogContext(m=m):
            try:
                rows = [low_count_conjecture(m, k) for k in range(1, m)]
                gaps = gap_and_cluster_report(m)
            except SpectraException as exc:
                report.errors.append(
                    CheckResult(
                        suite=CONJECTURES,
                        name=f"experiments m={m}",
                        passed=False,
                        detail=exc.message,
                        context={"code": exc.code},
                    )
                )
                continue
            report.low_counts.extend(rows)
            report.reports.append(gaps)
    for check in report.checks():
        metrics.record_check(CONJECTURES, check.passed)
        if not check.passed:
            log_event(
                logger,
                logging.WARNING,
                "Conjecture instance failed",
                check=check.name,
                detail=check.detail,
            )
    return report
