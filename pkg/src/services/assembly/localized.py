"""Localized graph eigenvalues: initial births at 5 and 6 and their continuations."""

from itertools import product as words
from typing import Dict, Iterator, List, Tuple

from src.core.exceptions import InvalidLevelError
from src.observability.logging import get_logger
from src.services.assembly.records import EigenType, EigenvalueRecord
from src.services.decimation.maps import Branch, phi
from src.services.oracle.laplacian import BoundaryCondition

logger = get_logger(__name__)

SERIES = (5, 6)
MERGE_TOL = 1e-12


def initial_multiplicity(series: int, m0: int, bc: BoundaryCondition) -> int:
    """Dimension of the eigenspace born at level m0 with eigenvalue 5 or 6."""
    if series == 5:
        count = (3 ** (m0 - 1) + 1) // 2 - 2 ** (m0 - 1)
    elif bc is BoundaryCondition.DIRICHLET:
        count = (3**m0 - 1) // 2 - 2**m0
    else:
        count = (3**m0 + 1) // 2 - 2**m0
    return max(count, 0)


def continuation_words(series: int, length: int) -> Iterator[Tuple[Branch, ...]]:
    """Admissible branch words; 6 continues only through the plus branch, to 3."""
    for word in words((Branch.MINUS, Branch.PLUS), repeat=length):
        if series == 6 and word and word[0] is Branch.MINUS:
            continue
        yield word


def continue_value(start: float, word: Tuple[Branch, ...]) -> float:
    x = start
    for b in word:
        x = phi(b, x)
    return x


def localized_graph_eigenvalues(m: int, bc: BoundaryCondition) -> List[EigenvalueRecord]:
    """
    Localized eigenvalues of Omega_m, ascending, with multiplicities.

    Every value is a birth at some level m0 <= m continued along a branch
    word of length m - m0. Records of equal value are merged and their
    multiplicities added.

    Raises:
        InvalidLevelError: m < 2 (Dirichlet) or m < 1 (Neumann)
    """
    minimum = 2 if bc is BoundaryCondition.DIRICHLET else 1
    if m < minimum:
        raise InvalidLevelError(m, f"{bc.value} spectra start at level {minimum}")

    merged: Dict[float, EigenvalueRecord] = {}
    for m0 in range(1, m + 1):
        for series in SERIES:
            mult = initial_multiplicity(series, m0, bc)
            if mult == 0:
                continue
            for word in continuation_words(series, m - m0):
                value = continue_value(float(series), word)
                record = EigenvalueRecord(
                    level=m,
                    value=value,
                    multiplicity=mult,
                    etype=EigenType.LOCALIZED,
                    series=series,
                    birth=m0,
                    branch_word="".join(b.value for b in word),
                )
                key = _merge_key(merged, value)
                if key is None:
                    merged[value] = record
                else:
                    kept = merged[key]
                    logger.debug(
                        "Merged localized values",
                        extra={"value": value, "words": [kept.branch_word, record.branch_word]},
                    )
                    merged[key] = EigenvalueRecord(
                        level=m,
                        value=kept.value,
                        multiplicity=kept.multiplicity + mult,
                        etype=EigenType.LOCALIZED,
                        series=kept.series,
                        birth=kept.birth,
                        branch_word=kept.branch_word,
                    )
    return sorted(merged.values(), key=lambda r: r.value)


def _merge_key(merged: Dict[float, EigenvalueRecord], value: float):
    for key in merged:
        if abs(key - value) <= MERGE_TOL * max(1.0, abs(value)):
            return key
    return None
