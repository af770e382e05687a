"""Dense Laplacian matrices of the graph approximations.

Eigenvalues follow the (4 - lambda) convention: the graph equation
(4 - lambda) u(x) = sum of u over the neighbours of x becomes
(4I - A) u = lambda u, so the spectra are the graph eigenvalues directly.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from src.core.exceptions import DomainError
from src.observability.logging import get_logger
from src.services.graphs.builder import GraphApprox, GraphKind

logger = get_logger(__name__)

NEUMANN_BOUNDARY_WEIGHT = 0.5


class BoundaryCondition(str, Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class LaplacianMatrix:
    """
    A symmetric matrix whose eigenvalues are graph eigenvalues.

    ``entries`` is the standard form W^(-1/2) S W^(-1/2) of the pencil
    (S, W); for Dirichlet matrices W is the identity. ``index_map`` sends a
    matrix row to a vertex index of ``graph`` and ``reflection`` is the
    left-right automorphism expressed on matrix rows.
    """

    graph: GraphApprox
    bc: BoundaryCondition
    entries: np.ndarray
    weight: np.ndarray
    index_map: Tuple[int, ...]
    reflection: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.index_map)

    def to_vertex_values(self, y: np.ndarray) -> np.ndarray:
        """Map a standard-form eigenvector back to the pencil, u = W^(-1/2) y."""
        return y / np.sqrt(self.weight)[:, None] if y.ndim == 2 else y / np.sqrt(self.weight)

    def apply(self, u: np.ndarray) -> np.ndarray:
        """(4 - lambda)-form operator on vertex values: W^(-1) S u."""
        s = np.sqrt(self.weight)
        return (self.entries @ (u * s)) / s


def _restricted(g: GraphApprox, rows: Tuple[int, ...]) -> Tuple[np.ndarray, Tuple[int, ...]]:
    position = {v: i for i, v in enumerate(rows)}
    adjacency = np.zeros((len(rows), len(rows)))
    for i, v in enumerate(rows):
        for w in g.adjacency[v]:
            j = position.get(w)
            if j is not None:
                adjacency[i, j] = 1.0
    reflection = tuple(position[g.reflection[v]] for v in rows)
    return adjacency, reflection


def dirichlet_matrix(g: GraphApprox) -> LaplacianMatrix:
    """
    4I - A over the interior vertices of ``g``; boundary values are zero.

    Every interior vertex of Gamma_m and Omega_m has four neighbours in the
    full graph, so the diagonal is constant.
    """
    rows = tuple(g.interior)
    adjacency, reflection = _restricted(g, rows)
    entries = 4.0 * np.eye(len(rows)) - adjacency
    logger.debug(
        "Built Dirichlet matrix",
        extra={"kind": g.kind.value, "m": g.level, "n": len(rows)},
    )
    return LaplacianMatrix(
        graph=g,
        bc=BoundaryCondition.DIRICHLET,
        entries=entries,
        weight=np.ones(len(rows)),
        index_map=rows,
        reflection=reflection,
    )


def neumann_matrix(g: GraphApprox) -> LaplacianMatrix:
    """
    Neumann matrix over all vertices of a domain graph.

    Boundary rows come from even reflection: a boundary vertex has two
    neighbours and reads (4 - lambda) u(x) = 2 u(n1) + 2 u(n2). Weighting
    the boundary rows by 1/2 gives the symmetric pencil
    S = diag(4 w) - A, W = diag(w), stored in standard form.

    Raises:
        DomainError: ``g`` is not a domain graph
    """
    if g.kind is not GraphKind.OMEGA:
        raise DomainError("Neumann matrices are defined on domain graphs", value=g.kind.value)
    rows = tuple(range(len(g)))
    adjacency, reflection = _restricted(g, rows)
    weight = np.ones(len(rows))
    weight[list(g.boundary)] = NEUMANN_BOUNDARY_WEIGHT

    inv_sqrt = 1.0 / np.sqrt(weight)
    stiffness = np.diag(4.0 * weight) - adjacency
    entries = stiffness * inv_sqrt[:, None] * inv_sqrt[None, :]
    logger.debug(
        "Built Neumann matrix",
        extra={"m": g.level, "n": len(rows), "boundary": len(g.boundary)},
    )
    return LaplacianMatrix(
        graph=g,
        bc=BoundaryCondition.NEUMANN,
        entries=entries,
        weight=weight,
        index_map=rows,
        reflection=reflection,
    )


def laplacian_matrix(g: GraphApprox, bc: BoundaryCondition) -> LaplacianMatrix:
    if bc is BoundaryCondition.NEUMANN:
        return neumann_matrix(g)
    return dirichlet_matrix(g)
