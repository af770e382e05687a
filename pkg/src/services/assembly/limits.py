"""Limit spectra on the domain, enumerated below a cutoff.

A limit eigenvalue is 3/2 lim 5^m lambda_m along a decimation sequence that
eventually follows the minus branch. Localized sequences are exact; primitive
ones are weak, known through the root tables up to a level cap and continued
by the minus branch beyond it; miniaturized ones are 5^k times a skew limit.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from src.core.config import settings
from src.core.exceptions import DomainError
from src.observability.logging import get_logger, log_event
from src.services.assembly.assembler import branch_sequence, first_level, primitive_family
from src.services.assembly.localized import SERIES, continuation_words, initial_multiplicity
from src.services.assembly.records import EigenType, EigenvalueRecord
from src.services.decimation.maps import Branch, BranchSequence, Phi, limit_scaled
from src.services.oracle.laplacian import BoundaryCondition
from src.services.primitive.roots import RootEntry, RootTable, isolate_family_roots

logger = get_logger(__name__)

MERGE_RTOL = 1e-9
# Every newborn primitive root lies above 2 and every plus continuation above 5/2.
NEWBORN_FLOOR = 2.0
PLUS_FLOOR = 2.5


@dataclass(frozen=True)
class LimitSpectrum:
    """
    Limit eigenvalues below ``cutoff``.

    ``certified_below`` is the largest x below which the enumeration is
    provably complete at the level cap used; records at or above it may be
    missing neighbours.
    """

    bc: BoundaryCondition
    cutoff: float
    level_cap: int
    records: Tuple[EigenvalueRecord, ...]
    certified_below: float

    @property
    def truncated(self) -> bool:
        return self.cutoff > self.certified_below

    def flat_values(self) -> List[float]:
        return sorted(r.value for r in self.records for _ in range(r.multiplicity))


@lru_cache(maxsize=None)
def phi_floor(x: float) -> float:
    return Phi(x)


def certified_below(level_cap: int) -> float:
    """Primitive sequences fixed after ``level_cap`` have limits of at least this."""
    return 5.0 ** (level_cap + 1) * phi_floor(NEWBORN_FLOOR)


def level_for_cutoff(cutoff: float, level_cap: int, base: int) -> int:
    """Smallest level whose certified range covers ``cutoff``, at most ``level_cap``."""
    m = base + 2
    while m < level_cap and certified_below(m) < cutoff:
        m += 1
    return min(m, level_cap)


def _merge(records: List[EigenvalueRecord]) -> List[EigenvalueRecord]:
    records = sorted(records, key=lambda r: r.value)
    out: List[EigenvalueRecord] = []
    for rec in records:
        last = out[-1] if out else None
        if (
            last is not None
            and last.etype is rec.etype is EigenType.LOCALIZED
            and abs(rec.value - last.value) <= MERGE_RTOL * rec.value
        ):
            out[-1] = EigenvalueRecord(
                level=None,
                value=last.value,
                multiplicity=last.multiplicity + rec.multiplicity,
                etype=last.etype,
                series=last.series,
                birth=last.birth,
                branch_word=last.branch_word,
                sequence=last.sequence,
            )
        else:
            out.append(rec)
    return out


def localized_limits(bc: BoundaryCondition, cutoff: float) -> List[EigenvalueRecord]:
    """
    Localized limit eigenvalues below ``cutoff``.

    A sequence born at m0 and fixed at m1 = m0 + |w| (w empty or ending in
    a plus branch) has limit 5^m1 Phi(phi_w(z)), followed exactly by
    ``limit_scaled``. The value at m1 is at least 5/2 unless w is empty,
    which bounds the levels to scan.
    """
    out = []
    floor = min(phi_floor(PLUS_FLOOR), phi_floor(5.0))
    m1 = 1
    while 5.0**m1 * floor <= cutoff:
        for m0 in range(1, m1 + 1):
            for series in SERIES:
                mult = initial_multiplicity(series, m0, bc)
                if mult == 0:
                    continue
                for word in continuation_words(series, m1 - m0):
                    if word and word[-1] is not Branch.PLUS:
                        continue
                    sequence = BranchSequence(m0=m0, start=float(series), branches=word)
                    value = limit_scaled(sequence)
                    if value <= cutoff:
                        out.append(
                            EigenvalueRecord(
                                level=None,
                                value=value,
                                multiplicity=mult,
                                etype=EigenType.LOCALIZED,
                                series=series,
                                birth=m0,
                                branch_word=sequence.word,
                                sequence=sequence,
                            )
                        )
        m1 += 1
    return out


def aitken(s0: float, s1: float, s2: float) -> float:
    """Aitken's delta-squared extrapolation of three consecutive terms."""
    denom = s2 - 2.0 * s1 + s0
    if denom == 0.0:
        return s2
    return s2 - (s2 - s1) ** 2 / denom


def _known_up_to(known: Dict[int, float], last: int) -> Callable[[int], Optional[float]]:
    return lambda m: known.get(m) if m <= last else None


def weak_limit(table: RootTable, entry: RootEntry) -> Tuple[float, float, BranchSequence]:
    """
    Limit estimate of the weak sequence ending at ``entry`` and its error bar.

    The sequence is resolved from the root tables up to the table level and
    continued by the minus branch beyond it. When the last two steps were
    already minus continuations, the estimates cut one and two levels
    earlier are extrapolated together with it.
    """
    sequence, known = branch_sequence(table, entry)
    tail = 0
    for b in reversed(sequence.branches):
        if b is not Branch.MINUS or tail == 2:
            break
        tail += 1
    chain = [limit_scaled(sequence, _known_up_to(known, table.level - k)) for k in range(tail + 1)]
    estimate = chain[0]
    if len(chain) == 3:
        value = aitken(chain[2], chain[1], chain[0])
        return value, abs(value - estimate), sequence
    error = abs(chain[0] - chain[1]) if len(chain) == 2 else 0.0
    return estimate, error, sequence


def primitive_limits(
    bc: BoundaryCondition, cutoff: float, level: int, skew: bool
) -> List[EigenvalueRecord]:
    family = primitive_family(bc, skew)
    etype = EigenType.PRIMITIVE_SKEW if skew else EigenType.PRIMITIVE_SYM
    table = isolate_family_roots(family, level)
    out = []
    for entry in table.roots:
        if entry.value >= 6.0:
            continue
        value, error, sequence = weak_limit(table, entry)
        if value <= cutoff:
            out.append(
                EigenvalueRecord(
                    level=None,
                    value=value,
                    multiplicity=1,
                    etype=etype,
                    birth=sequence.m0,
                    branch_word=sequence.word,
                    interval=entry.interval,
                    error=error,
                    family=family,
                    sequence=sequence,
                )
            )
    return out


def miniaturized_limits(
    skew_limits: List[EigenvalueRecord], cutoff: float
) -> List[EigenvalueRecord]:
    """5^k copies of every positive skew limit, multiplicity 2^k."""
    out = []
    for rec in skew_limits:
        if rec.value <= 0.0:
            continue
        k = 1
        while 5.0**k * rec.value <= cutoff:
            out.append(
                EigenvalueRecord(
                    level=None,
                    value=5.0**k * rec.value,
                    multiplicity=2**k,
                    etype=EigenType.MINIATURIZED,
                    interval=rec.interval,
                    contractions=k,
                    error=5.0**k * rec.error,
                    family=rec.family,
                    sequence=rec.sequence,
                )
            )
            k += 1
    return out


def limit_spectrum(
    bc: BoundaryCondition, cutoff: float, level_cap: Optional[int] = None
) -> LimitSpectrum:
    """
    Enumerate limit eigenvalues up to ``cutoff``.

    Args:
        bc: Boundary condition
        cutoff: Largest value of interest
        level_cap: Highest root table level to isolate, LIMIT_LEVEL_CAP when omitted

    Returns:
        Records sorted by value; a truncation warning is logged when the
        cutoff lies beyond the certified range

    Raises:
        DomainError: non-positive cutoff
        ConvergenceError: a scaled sequence did not settle
    """
    if cutoff <= 0:
        raise DomainError("cutoff must be positive", value=cutoff)
    level_cap = settings.LIMIT_LEVEL_CAP if level_cap is None else level_cap
    level = level_for_cutoff(cutoff, level_cap, first_level(bc))

    sym = primitive_limits(bc, cutoff, level, skew=False)
    skew = primitive_limits(bc, cutoff, level, skew=True)
    records = _merge(
        localized_limits(bc, cutoff) + sym + skew + miniaturized_limits(skew, cutoff)
    )
    spectrum = LimitSpectrum(
        bc=bc,
        cutoff=cutoff,
        level_cap=level,
        records=tuple(records),
        certified_below=certified_below(level),
    )
    if spectrum.truncated:
        log_event(
            logger,
            logging.WARNING,
            "Cutoff beyond the certified range of the limit spectrum",
            bc=bc.value,
            cutoff=cutoff,
            certified_below=spectrum.certified_below,
            certified_count=sum(
                r.multiplicity for r in records if r.value < spectrum.certified_below
            ),
        )
    return spectrum


def by_type(spectrum: LimitSpectrum) -> Dict[EigenType, List[EigenvalueRecord]]:
    out: Dict[EigenType, List[EigenvalueRecord]] = {t: [] for t in EigenType}
    for rec in spectrum.records:
        out[rec.etype].append(rec)
    return out
