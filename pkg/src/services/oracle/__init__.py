"""Dense eigensolver ground truth for the graph Laplacians."""

from src.services.oracle.jacobi import (
    EigenCluster,
    OracleSpectrum,
    eigensolve,
    jacobi_eigh,
    round_robin,
)
from src.services.oracle.laplacian import (
    BoundaryCondition,
    LaplacianMatrix,
    dirichlet_matrix,
    laplacian_matrix,
    neumann_matrix,
)

__all__ = [
    "BoundaryCondition",
    "EigenCluster",
    "LaplacianMatrix",
    "OracleSpectrum",
    "dirichlet_matrix",
    "eigensolve",
    "jacobi_eigh",
    "laplacian_matrix",
    "neumann_matrix",
    "round_robin",
]
