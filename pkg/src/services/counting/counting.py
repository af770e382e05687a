"""Eigenvalue counting functions and the counting-gap experiment."""

import bisect
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from src.core.exceptions import DomainError
from src.models.schemas.report import CountingRow
from src.observability.logging import get_logger, log_event
from src.services.assembly.limits import limit_spectrum
from src.services.assembly.records import EigenType, EigenvalueRecord
from src.services.counting.sg_spectrum import sg_limit_values
from src.services.oracle.laplacian import BoundaryCondition

logger = get_logger(__name__)

GAP_EXPONENT = math.log(2) / math.log(5)
WEYL_EXPONENT = math.log(3) / math.log(5)
WINDOW_GROWTH = 2.0


class CountingDomain(str, Enum):
    SG = "sg"
    OMEGA = "omega"


@dataclass(frozen=True)
class CountingFunction:
    """Non-decreasing step function given by its breakpoints (x, count at x)."""

    breakpoints: Tuple[Tuple[float, int], ...]
    certified_below: float = math.inf

    @classmethod
    def from_records(
        cls, records: Iterable[EigenvalueRecord], certified_below: float = math.inf
    ) -> "CountingFunction":
        points: List[Tuple[float, int]] = []
        total = 0
        for rec in sorted(records, key=lambda r: r.value):
            total += rec.multiplicity
            if points and points[-1][0] == rec.value:
                points[-1] = (rec.value, total)
            else:
                points.append((rec.value, total))
        return cls(breakpoints=tuple(points), certified_below=certified_below)

    @property
    def xs(self) -> List[float]:
        return [x for x, _ in self.breakpoints]

    def __call__(self, x: float) -> int:
        i = bisect.bisect_right(self.xs, x)
        return self.breakpoints[i - 1][1] if i else 0


@dataclass(frozen=True)
class CountingResult:
    domain: CountingDomain
    x_max: float
    total: CountingFunction
    parts: Dict[str, CountingFunction] = field(default_factory=dict)

    @property
    def truncated(self) -> bool:
        return self.x_max > self.total.certified_below


def _split(records: List[EigenvalueRecord], key) -> Dict[str, List[EigenvalueRecord]]:
    parts: Dict[str, List[EigenvalueRecord]] = {}
    for rec in records:
        parts.setdefault(key(rec), []).append(rec)
    return parts


def rho(
    domain: CountingDomain, x_max: float, level_cap: Optional[int] = None
) -> CountingResult:
    """
    Counting function of the gasket (``sg``) or of the domain (``omega``) up to ``x_max``.

    Parts split the count by type: R2, R5, R6 for the gasket and L, P+, P-,
    M for the domain; they sum to the total at every point.

    Raises:
        DomainError: x_max <= 0
    """
    if x_max <= 0:
        raise DomainError("x_max must be positive", value=x_max)

    if domain is CountingDomain.SG:
        records = sg_limit_values(x_max)
        certified = math.inf
        groups = _split(records, lambda r: f"R{r.series}")
    else:
        spectrum = limit_spectrum(BoundaryCondition.DIRICHLET, x_max, level_cap)
        records = list(spectrum.records)
        certified = spectrum.certified_below
        groups = _split(records, lambda r: r.etype.value)
        for etype in EigenType:
            groups.setdefault(etype.value, [])

    result = CountingResult(
        domain=domain,
        x_max=x_max,
        total=CountingFunction.from_records(records, certified),
        parts={
            name: CountingFunction.from_records(recs, certified)
            for name, recs in sorted(groups.items())
        },
    )
    if result.truncated:
        log_event(
            logger,
            logging.WARNING,
            "Counting range exceeds the certified range",
            domain=domain.value,
            x_max=x_max,
            certified_below=certified,
        )
    return result


def normalized_gap(x: float, difference: int) -> Optional[float]:
    """difference / (x^(log2/log5) log x), undefined for x <= 1."""
    if x <= 1.0:
        return None
    return difference / (x**GAP_EXPONENT * math.log(x))


@dataclass(frozen=True)
class GapWindow:
    lo: float
    hi: float
    sup: Optional[float]


@dataclass(frozen=True)
class GapExperiment:
    """rho_sg - rho_omega at every breakpoint of either function."""

    x_max: float
    rows: Tuple[CountingRow, ...]
    windows: Tuple[GapWindow, ...]

    @property
    def nonnegative(self) -> bool:
        return all(r.difference >= 0 for r in self.rows)

    @property
    def bounded(self) -> bool:
        """No dyadic window's sup exceeds twice the previous one."""
        sups = [w.sup for w in self.windows if w.sup is not None and w.sup > 0]
        return all(b <= WINDOW_GROWTH * a for a, b in zip(sups, sups[1:]))

    @property
    def sup_normalized(self) -> Optional[float]:
        values = [r.normalized for r in self.rows if r.normalized is not None]
        return max(values) if values else None


def _dyadic_windows(rows: List[CountingRow]) -> List[GapWindow]:
    buckets: Dict[int, List[float]] = {}
    for row in rows:
        if row.normalized is None:
            continue
        buckets.setdefault(int(math.floor(math.log2(row.x))), []).append(row.normalized)
    return [
        GapWindow(lo=2.0**j, hi=2.0 ** (j + 1), sup=max(values))
        for j, values in sorted(buckets.items())
    ]


def counting_gap_experiment(x_max: float, level_cap: Optional[int] = None) -> GapExperiment:
    """
    Compare the gasket and domain counting functions up to ``x_max``.

    Evaluates D(x) = rho_sg(x) - rho_omega(x) at the merged breakpoints that
    lie in the certified range, plus just below the first domain eigenvalue,
    and reports sup D(x) / (x^(log2/log5) log x) per dyadic window.
    """
    sg = rho(CountingDomain.SG, x_max, level_cap).total
    omega = rho(CountingDomain.OMEGA, x_max, level_cap).total
    limit = min(x_max, omega.certified_below)

    xs = sorted({x for x in sg.xs + omega.xs if x <= limit})
    if omega.breakpoints:
        below_first = math.nextafter(omega.breakpoints[0][0], 0.0)
        if 0 < below_first <= limit:
            xs = sorted(set(xs) | {below_first})

    rows = []
    for x in xs:
        a, b = sg(x), omega(x)
        rows.append(
            CountingRow(
                x=x,
                rho_sg=a,
                rho_omega=b,
                difference=a - b,
                normalized=normalized_gap(x, a - b),
            )
        )
    return GapExperiment(x_max=x_max, rows=tuple(rows), windows=tuple(_dyadic_windows(rows)))


def weyl_ratio(counting: CountingFunction) -> List[Tuple[float, float]]:
    """(log x, rho(x) / x^(log3/log5)) at every breakpoint with x > 1."""
    return [
        (math.log(x), count / x**WEYL_EXPONENT)
        for x, count in counting.breakpoints
        if x > 1.0
    ]
