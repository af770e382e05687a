"""Dirichlet spectrum of the gasket minus its three corners, by decimation bookkeeping.

At graph level the initial eigenvalues are 2 (level 1 only, multiplicity 1),
5 (multiplicity (3^(m0-1) + 3)/2) and 6 (multiplicity (3^m0 - 3)/2, from
level 2); every value continues through both inverse branches except 6,
which continues only to 3.
"""

from functools import lru_cache
from typing import List

from src.core.exceptions import InvalidLevelError
from src.services.assembly.localized import continuation_words, continue_value
from src.services.assembly.records import EigenType, EigenvalueRecord, Ledger, SpectrumTable
from src.services.decimation.maps import Branch, BranchSequence, Phi, limit_scaled
from src.services.graphs.builder import build_gamma, gamma_vertex_count
from src.services.oracle.jacobi import eigensolve
from src.services.oracle.laplacian import BoundaryCondition, dirichlet_matrix

SG_SERIES = (2, 5, 6)


def sg_initial_multiplicity(series: int, m0: int) -> int:
    if series == 2:
        return 1 if m0 == 1 else 0
    if series == 5:
        return (3 ** (m0 - 1) + 3) // 2
    return (3**m0 - 3) // 2


def _records(m: int) -> List[EigenvalueRecord]:
    out = []
    for m0 in range(1, m + 1):
        for series in SG_SERIES:
            mult = sg_initial_multiplicity(series, m0)
            if mult == 0:
                continue
            for word in continuation_words(series, m - m0):
                out.append(
                    EigenvalueRecord(
                        level=m,
                        value=continue_value(float(series), word),
                        multiplicity=mult,
                        etype=EigenType.LOCALIZED,
                        series=series,
                        birth=m0,
                        branch_word="".join(b.value for b in word),
                    )
                )
    return sorted(out, key=lambda r: r.value)


@lru_cache(maxsize=None)
def sg_dirichlet_spectrum(m: int) -> SpectrumTable:
    """
    Graph Dirichlet spectrum of Gamma_m with the corners as boundary.

    The total dimension is #V_m - 3. All records are typed localized; the
    series field distinguishes the 2-, 5- and 6-series.
    """
    if m < 1:
        raise InvalidLevelError(m, "the gasket graph has interior points from level 1")
    records = _records(m)
    total = sum(r.multiplicity for r in records)
    return SpectrumTable(
        level=m,
        bc=BoundaryCondition.DIRICHLET,
        records=tuple(records),
        ledger=Ledger(localized=total, primitive_sym=0, primitive_skew=0, miniaturized=0),
    )


def sg_dimension(m: int) -> int:
    return gamma_vertex_count(m) - 3


def sg_oracle_deviation(m: int) -> float:
    """Largest deviation between the bookkeeping spectrum and the eigensolver on Gamma_m."""
    ours = sg_dirichlet_spectrum(m).flat_values()
    theirs = eigensolve(dirichlet_matrix(build_gamma(m))).eigenvalues
    if len(ours) != len(theirs):
        return float("inf")
    return max(abs(a - float(b)) for a, b in zip(ours, theirs))


def sg_limit_values(cutoff: float) -> List[EigenvalueRecord]:
    """
    Limit eigenvalues below ``cutoff``: 5^m1 Phi(phi_w(z)) for words w that
    are empty or end in a plus branch. The enumeration is exact.
    """
    out = []
    floor = Phi(2.0)
    m1 = 1
    while 5.0**m1 * floor <= cutoff:
        for m0 in range(1, m1 + 1):
            for series in SG_SERIES:
                mult = sg_initial_multiplicity(series, m0)
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
    return sorted(out, key=lambda r: r.value)
