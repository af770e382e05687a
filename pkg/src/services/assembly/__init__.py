"""Classified spectra of the domain: graph levels and limits."""

from src.services.assembly.assembler import (
    OracleComparison,
    assemble,
    compare_with_oracle,
    counted_ledger,
    miniaturized_graph_eigenvalues,
    oracle_spectrum,
    primitive_graph_eigenvalues,
    verify_ledgers,
    verify_oracle,
)
from src.services.assembly.limits import LimitSpectrum, limit_spectrum
from src.services.assembly.localized import localized_graph_eigenvalues
from src.services.assembly.records import (
    EigenType,
    EigenvalueRecord,
    Ledger,
    SpectrumTable,
    expected_ledger,
)
from src.services.assembly.skeleton import (
    SkeletonSolution,
    reconstruct_eigenfunction,
    skeleton_solve,
)

__all__ = [
    "EigenType",
    "EigenvalueRecord",
    "Ledger",
    "LimitSpectrum",
    "OracleComparison",
    "SkeletonSolution",
    "SpectrumTable",
    "assemble",
    "compare_with_oracle",
    "counted_ledger",
    "expected_ledger",
    "limit_spectrum",
    "localized_graph_eigenvalues",
    "miniaturized_graph_eigenvalues",
    "oracle_spectrum",
    "primitive_graph_eigenvalues",
    "reconstruct_eigenfunction",
    "skeleton_solve",
    "verify_ledgers",
    "verify_oracle",
]
