"""Dense symmetric eigensolver.

The default method is cyclic Jacobi in round-robin order: each round
rotates n/2 disjoint index pairs at once, so a sweep is n - 1 vectorized
rounds. ``lapack`` delegates to ``numpy.linalg.eigh`` for cross-checks.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from src.core.config import settings
from src.core.exceptions import InternalConsistencyError, SolverError
from src.models.schemas.spectrum import OracleRow
from src.observability.logging import get_logger, log_event
from src.observability.metrics import metrics
from src.services.oracle.laplacian import LaplacianMatrix

logger = get_logger(__name__)

RESIDUAL_FACTOR = 1e-9


def round_robin(n: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    Pair schedule covering every (p, q) once in n - 1 rounds (n even) or n rounds.

    Returns:
        Per round, the arrays of p and q indices, with p < q
    """
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            a, b = players[i], players[size - 1 - i]
            if a >= 0 and b >= 0:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, taken from the strict upper triangle."""
    return float(np.sqrt(2.0) * np.linalg.norm(np.triu(a, k=1)))


def _rotate(a: np.ndarray, v: Optional[np.ndarray], p: np.ndarray, q: np.ndarray) -> None:
    apq = a[p, q]
    active = apq != 0.0
    if not np.any(active):
        return
    p, q, apq = p[active], q[active], apq[active]
    tau = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t[tau == 0.0] = 1.0
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = cols_p * c - cols_q * s
    a[:, q] = cols_p * s + cols_q * c
    rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
    a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
    a[p, q] = 0.0
    a[q, p] = 0.0

    if v is not None:
        vp, vq = v[:, p].copy(), v[:, q].copy()
        v[:, p] = vp * c - vq * s
        v[:, q] = vp * s + vq * c


def jacobi_eigh(
    matrix: np.ndarray,
    want_vectors: bool = False,
    tol: Optional[float] = None,
    max_sweeps: Optional[int] = None,
) -> Tuple[np.ndarray, Optional[np.ndarray], int]:
    """
    Cyclic Jacobi diagonalization of a real symmetric matrix.

    Args:
        matrix: Symmetric matrix, left untouched
        want_vectors: Accumulate the rotations into eigenvectors
        tol: Stop when the off-diagonal norm drops below tol * ||matrix||_F
        max_sweeps: Sweeps allowed before giving up

    Returns:
        Ascending eigenvalues, matching eigenvector columns or None, sweeps used

    Raises:
        SolverError: no convergence within max_sweeps
    """
    tol = settings.JACOBI_TOL if tol is None else tol
    max_sweeps = settings.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps

    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    target = tol * float(np.linalg.norm(a))
    schedule = round_robin(n)

    sweeps = 0
    while off_norm(a) > target:
        if sweeps >= max_sweeps:
            raise SolverError(
                f"Jacobi did not converge in {max_sweeps} sweeps",
                sweeps=sweeps,
                off_norm=off_norm(a),
            )
        for p, q in schedule:
            _rotate(a, v, p, q)
        a = 0.5 * (a + a.T)
        sweeps += 1

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    vectors = v[:, order] if v is not None else None
    return values[order], vectors, sweeps


@dataclass(frozen=True)
class EigenCluster:
    """Eigenvalues merged at the multiplicity tolerance."""

    value: float
    multiplicity: int
    sym_dim: int
    skew_dim: int


@dataclass(frozen=True)
class OracleSpectrum:
    eigenvalues: np.ndarray
    clusters: Tuple[EigenCluster, ...]
    eigenvectors: Optional[np.ndarray] = field(default=None, repr=False)
    sweeps: int = 0

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def multiset(self) -> List[Tuple[float, int]]:
        return [(c.value, c.multiplicity) for c in self.clusters]

    def rows(self, level: int, bc: str) -> List[OracleRow]:
        out = []
        index = 1
        for c in self.clusters:
            out.append(
                OracleRow(
                    level=level,
                    bc=bc,
                    index=index,
                    eigenvalue=c.value,
                    multiplicity=c.multiplicity,
                    sym_dim=c.sym_dim,
                    skew_dim=c.skew_dim,
                )
            )
            index += c.multiplicity
        return out


def _clusters(values: np.ndarray, tol: float) -> List[Tuple[int, int]]:
    """Index ranges [start, stop) of values within ``tol`` of their neighbour."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol * max(1.0, abs(values[i])):
            groups.append((start, i))
            start = i
    return groups


def _symmetry_split(reflection: np.ndarray, block: np.ndarray) -> Tuple[int, int]:
    """Dimensions of the symmetric and skew parts of an eigenspace."""
    trace = float(np.sum(block * block[reflection, :]))
    k = block.shape[1]
    sym = int(round((k + trace) / 2.0))
    return sym, k - sym


def eigensolve(
    m: LaplacianMatrix,
    want_vectors: bool = False,
    method: Optional[str] = None,
    merge_tol: Optional[float] = None,
) -> OracleSpectrum:
    """
    Diagonalize a Laplacian matrix and group its eigenvalues.

    Eigenvectors are always computed internally to split every eigenspace
    into symmetric and skew parts under the reflection; they are returned in
    vertex form (W^(-1/2) y) only when ``want_vectors`` is set, after a
    residual check.

    Raises:
        SolverError: Jacobi did not converge
        InternalConsistencyError: an eigenpair residual exceeds 1e-9 * n
    """
    method = method or settings.ORACLE_METHOD
    merge_tol = settings.TOL_ORACLE if merge_tol is None else merge_tol
    n = m.n
    if n == 0:
        return OracleSpectrum(eigenvalues=np.zeros(0), clusters=())

    started = time.perf_counter()
    sweeps = 0
    if method == "lapack":
        values, vectors = np.linalg.eigh(m.entries)
    else:
        values, vectors, sweeps = jacobi_eigh(m.entries, want_vectors=True)
    duration = time.perf_counter() - started
    metrics.record_eigensolve(method, n, duration, sweeps if method != "lapack" else None)

    reflection = np.array(m.reflection, dtype=int)
    clusters = []
    for start, stop in _clusters(values, merge_tol):
        sym, skew = _symmetry_split(reflection, vectors[:, start:stop])
        clusters.append(
            EigenCluster(
                value=float(np.mean(values[start:stop])),
                multiplicity=stop - start,
                sym_dim=sym,
                skew_dim=skew,
            )
        )
    for a, b in zip(clusters, clusters[1:]):
        if b.value - a.value < settings.NEAR_TIE_WARN:
            log_event(
                logger,
                logging.WARNING,
                "Near-tie between distinct oracle eigenvalues",
                lower=a.value,
                upper=b.value,
                gap=b.value - a.value,
            )

    result_vectors = None
    if want_vectors:
        residual = float(np.max(np.abs(m.entries @ vectors - vectors * values[None, :])))
        if residual > RESIDUAL_FACTOR * n:
            raise InternalConsistencyError(
                "eigenpair residual too large", residual=residual, n=n
            )
        result_vectors = m.to_vertex_values(vectors)

    logger.debug(
        "Solved eigenproblem",
        extra={"method": method, "n": n, "sweeps": sweeps, "clusters": len(clusters)},
    )
    return OracleSpectrum(
        eigenvalues=values,
        clusters=tuple(clusters),
        eigenvectors=result_vectors,
        sweeps=sweeps,
    )
