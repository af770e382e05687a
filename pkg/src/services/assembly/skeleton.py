"""Skeleton recurrence and reconstruction of primitive eigenfunctions.

A primitive eigenfunction on Omega_m is fixed by its values b_0..b_m on the
chain q0, F1 q0, ..., F1^m q0. Local symmetry in every cell F_w(SG) with w
over {1, 2} spreads b_k to all apexes F_w q0 with |w| = k; each top cell
F_w F_0(SG) is then filled by the extension step, one level at a time.
"""

from dataclasses import dataclass
from itertools import product as words
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.core.config import settings
from src.core.exceptions import (
    DomainError,
    InternalConsistencyError,
    NotAnEigenvalueError,
    ReconstructionError,
)
from src.observability.logging import get_logger
from src.services.assembly.records import EigenType, EigenvalueRecord
from src.services.decimation.extension import extend_values
from src.services.decimation.maps import f_iterate
from src.services.graphs.builder import Q0, GraphApprox, GraphKind, Vertex, image
from src.services.oracle.laplacian import BoundaryCondition, laplacian_matrix
from src.services.primitive.entries import entry_polys

logger = get_logger(__name__)

RECONSTRUCTION_RTOL = 1e-7

Cell = Tuple[Vertex, Vertex, Vertex]


@dataclass(frozen=True)
class SkeletonSolution:
    """Skeleton values b_0..b_m and the relative residual of the closing row."""

    value: float
    b: Tuple[float, ...]
    residual: float

    @property
    def level(self) -> int:
        return len(self.b) - 1


def _decimated(lam: float, m: int, i: int) -> float:
    """lambda_{i+1} = F_{m-i-1}(lambda), the row-i evaluation point."""
    return f_iterate(lam, m - i - 1)


def skeleton_solve(
    lam: float,
    m: int,
    skew: bool = False,
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET,
    tol: Optional[float] = None,
) -> SkeletonSolution:
    """
    Run the three-term skeleton recurrence at ``lam``.

    Dirichlet: b_0 = 0, b_1 = 1 and the closing condition is b_m = 0.
    Neumann: the apex row (4 - lambda_1) b_0 = 4 b_1 starts the recurrence
    (b_0 = 1; skew functions have b_0 = 0, b_1 = 1) and the closing
    condition is the bottom row -2 b_{m-1} + (2 - lambda) b_m = 0.

    Raises:
        DomainError: m below the first level of the boundary condition
        NotAnEigenvalueError: the closing residual exceeds ``tol``
    """
    tol = settings.SKELETON_TOL if tol is None else tol
    neumann = bc is BoundaryCondition.NEUMANN
    if m < (1 if neumann else 2):
        raise DomainError("skeleton recurrence needs more levels", value=m)
    e = entry_polys()

    if neumann and not skew:
        b: List[float] = [1.0, (4.0 - f_iterate(lam, m - 1)) / 4.0]
    else:
        b = [0.0, 1.0]

    for i in range(1, m):
        x = _decimated(lam, m, i)
        if i == 1 and skew:
            nxt = -e.s_tilde.evaluate_float(x) * b[1] / e.r_tilde.evaluate_float(x)
        else:
            nxt = -(
                e.l.evaluate_float(x) * b[i - 1] + e.s.evaluate_float(x) * b[i]
            ) / e.r.evaluate_float(x)
        b.append(nxt)

    if not neumann:
        closing = b[m]
    elif skew and m == 1:
        closing = (6.0 - lam) * b[1]
    else:
        closing = -2.0 * b[m - 1] + (2.0 - lam) * b[m]

    scale = max(abs(v) for v in b)
    residual = abs(closing) / scale
    if residual > tol:
        raise NotAnEigenvalueError(lam, residual)
    if not neumann:
        b[m] = 0.0
    return SkeletonSolution(value=lam, b=tuple(b), residual=residual)


def _midpoint(a: Vertex, b: Vertex) -> Vertex:
    return Vertex((a.x + b.x) / 2, (a.y + b.y) / 2)


def _subdivide(cells: List[Cell]) -> List[Cell]:
    out = []
    for a, b, c in cells:
        ab, ac, bc = _midpoint(a, b), _midpoint(a, c), _midpoint(b, c)
        out.extend([(a, ab, ac), (ab, b, bc), (ac, bc, c)])
    return out


def skeleton_values(sol: SkeletonSolution, skew: bool) -> Dict[Vertex, float]:
    """Values at every apex F_w q0, w over {1, 2}."""
    values: Dict[Vertex, float] = {}
    for k, bk in enumerate(sol.b):
        for w in words((1, 2), repeat=k):
            sign = -1.0 if skew and w and w[0] == 2 else 1.0
            values[image(w, Q0)] = sign * bk
    return values


def fill_cells(sol: SkeletonSolution, values: Dict[Vertex, float]) -> Dict[Vertex, float]:
    """Extend apex values into every top cell F_w F_0(SG)."""
    m = sol.level
    lam = sol.value
    for k in range(m):
        for w in words((1, 2), repeat=k):
            cells: List[Cell] = [(image(w, Q0), image(w + (1,), Q0), image(w + (2,), Q0))]
            for j in range(k + 1, m):
                values = extend_values(cells, values, f_iterate(lam, m - j - 1))
                cells = _subdivide(cells)
    return values


def reconstruct_eigenfunction(
    rec: EigenvalueRecord,
    g: GraphApprox,
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET,
) -> np.ndarray:
    """
    Vertex values of a primitive eigenfunction on ``g``.

    Args:
        rec: Primitive record at level ``g.level``
        g: Domain graph
        bc: Boundary condition the record belongs to

    Returns:
        Values aligned with ``g.vertices``

    Raises:
        DomainError: not a primitive record of this level, or not a domain graph
        ReconstructionError: the matrix residual exceeds 1e-7 * ||u||_inf
    """
    if rec.etype not in (EigenType.PRIMITIVE_SYM, EigenType.PRIMITIVE_SKEW):
        raise DomainError("only primitive eigenfunctions are reconstructed", value=rec.etype.value)
    if g.kind is not GraphKind.OMEGA or rec.level != g.level:
        raise DomainError("record and graph levels differ", value=g.level)

    skew = rec.etype is EigenType.PRIMITIVE_SKEW
    sol = skeleton_solve(rec.value, g.level, skew, bc)
    values = fill_cells(sol, skeleton_values(sol, skew))

    missing = [v for v in g.vertices if v not in values]
    if missing:
        raise InternalConsistencyError(
            "reconstruction left vertices without values", count=len(missing)
        )
    u = np.array([values[v] for v in g.vertices], dtype=float)

    matrix = laplacian_matrix(g, bc)
    rows = list(matrix.index_map)
    residual = float(np.max(np.abs(matrix.apply(u[rows]) - rec.value * u[rows]), initial=0.0))
    norm = float(np.max(np.abs(u)))
    if residual > RECONSTRUCTION_RTOL * norm:
        raise ReconstructionError(rec.value, residual / norm)
    logger.debug(
        "Reconstructed eigenfunction",
        extra={"value": rec.value, "m": g.level, "residual": residual / norm},
    )
    return u
