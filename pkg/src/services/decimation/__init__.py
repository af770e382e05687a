"""Spectral decimation: f, its inverse branches, extension and limits."""

from src.services.decimation.extension import extend_eigenfunction, restrict
from src.services.decimation.maps import (
    Branch,
    BranchSequence,
    Phi,
    f_iterate,
    f_map,
    limit_scaled,
    phi,
    phi_minus_iterate,
)

__all__ = [
    "Branch",
    "BranchSequence",
    "Phi",
    "extend_eigenfunction",
    "f_iterate",
    "f_map",
    "limit_scaled",
    "phi",
    "phi_minus_iterate",
    "restrict",
]
