"""Extension of graph eigenfunctions from level m to level m+1."""

from typing import Dict, Sequence

import numpy as np

from src.core.exceptions import DomainError, ForbiddenEigenvalueError, InternalConsistencyError
from src.observability.logging import get_logger
from src.services.decimation.maps import FORBIDDEN
from src.services.graphs.builder import (
    GraphApprox,
    Vertex,
    build_gamma,
    build_graph,
)

logger = get_logger(__name__)

FORBIDDEN_ATOL = 1e-12
RESIDUAL_RTOL = 1e-10


def check_admissible(lam: float) -> None:
    """Raise when lam is one of the forbidden eigenvalues 2, 5, 6."""
    for value in FORBIDDEN:
        if abs(lam - value) < FORBIDDEN_ATOL:
            raise ForbiddenEigenvalueError(lam)


def extend_values(
    cells: Sequence[Sequence[Vertex]],
    values: Dict[Vertex, float],
    lam: float,
) -> Dict[Vertex, float]:
    """
    Extend values on cell corners to the cell midpoints.

    The midpoint opposite corner x_i gets
    ((4 - lam)(u(x_{i+1}) + u(x_{i-1})) + 2 u(x_i)) / ((2 - lam)(5 - lam)).
    Corners absent from ``values`` count as zero.
    """
    check_admissible(lam)
    denom = (2.0 - lam) * (5.0 - lam)
    out = dict(values)
    for corners in cells:
        u = [values.get(c, 0.0) for c in corners]
        for i in range(3):
            a, b = corners[(i + 1) % 3], corners[(i + 2) % 3]
            mid = Vertex((a.x + b.x) / 2, (a.y + b.y) / 2)
            if mid in out:
                continue
            out[mid] = ((4.0 - lam) * (u[(i + 1) % 3] + u[(i + 2) % 3]) + 2.0 * u[i]) / denom
    return out


def equation_residual(g: GraphApprox, u: np.ndarray, lam: float, rows: Sequence[int]) -> float:
    """Max over ``rows`` of |(4 - lam) u(x) - sum of neighbour values|, absent neighbours zero."""
    worst = 0.0
    for i in rows:
        total = sum(u[j] for j in g.adjacency[i])
        worst = max(worst, abs((4.0 - lam) * u[i] - total))
    return worst


def extend_eigenfunction(g_next: GraphApprox, u: np.ndarray, lambda_next: float) -> np.ndarray:
    """
    Extend a level-m eigenfunction to level m+1 of the same graph family.

    Args:
        g_next: Level m+1 graph
        u: Values aligned with the vertices of the level-m graph
        lambda_next: Eigenvalue at level m+1, f(lambda_next) being the level-m one

    Returns:
        Values aligned with ``g_next.vertices``; the level-m values are unchanged

    Raises:
        ForbiddenEigenvalueError: lambda_next in {2, 5, 6}
        InternalConsistencyError: the eigenvalue equation fails at a new vertex
    """
    if g_next.level < 1:
        raise DomainError("extension needs a target level of at least 1", value=g_next.level)
    check_admissible(lambda_next)

    g_prev = build_graph(g_next.kind, g_next.level - 1, max_level=g_next.level)
    if len(u) != len(g_prev):
        raise DomainError("values do not match the level-m graph", value=len(u))

    values = {v: float(u[i]) for i, v in enumerate(g_prev.vertices)}
    gamma_prev = build_gamma(g_next.level - 1, max_level=g_next.level)
    cells = [[gamma_prev.vertices[i] for i in cell] for cell in gamma_prev.cells]
    extended = extend_values(cells, values, lambda_next)

    result = np.array([extended[v] for v in g_next.vertices], dtype=float)

    old = set(g_prev.index)
    boundary = set(g_next.boundary)
    new_rows = [
        i
        for i, v in enumerate(g_next.vertices)
        if v not in old and i not in boundary and g_next.degree(i) == 4
    ]
    scale = float(np.max(np.abs(result), initial=0.0)) or 1.0
    residual = equation_residual(g_next, result, lambda_next, new_rows)
    if residual > RESIDUAL_RTOL * scale:
        raise InternalConsistencyError(
            "extended function violates the eigenvalue equation at a new vertex",
            residual=residual,
            eigenvalue=lambda_next,
        )
    return result


def restrict(g_prev: GraphApprox, g_next: GraphApprox, u_next: np.ndarray) -> np.ndarray:
    """Restriction of level-(m+1) values to the level-m vertices."""
    return np.array([u_next[g_next.index[v]] for v in g_prev.vertices], dtype=float)
