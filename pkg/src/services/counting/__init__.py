"""Counting functions, the gasket comparison and the spectral experiments."""

from src.services.counting.conjectures import (
    ConjectureReport,
    GapClusterReport,
    gap_and_cluster_report,
    low_count_conjecture,
    run_conjectures,
)
from src.services.counting.counting import (
    CountingDomain,
    CountingFunction,
    CountingResult,
    GapExperiment,
    counting_gap_experiment,
    rho,
    weyl_ratio,
)
from src.services.counting.sg_spectrum import (
    sg_dimension,
    sg_dirichlet_spectrum,
    sg_limit_values,
    sg_oracle_deviation,
)

__all__ = [
    "ConjectureReport",
    "CountingDomain",
    "CountingFunction",
    "CountingResult",
    "GapClusterReport",
    "GapExperiment",
    "counting_gap_experiment",
    "gap_and_cluster_report",
    "low_count_conjecture",
    "rho",
    "run_conjectures",
    "sg_dimension",
    "sg_dirichlet_spectrum",
    "sg_limit_values",
    "sg_oracle_deviation",
    "weyl_ratio",
]
