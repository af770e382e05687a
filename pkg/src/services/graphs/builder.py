"""Graph approximations of the gasket and of the domain without its bottom edge.

Vertices are generated on the integer lattice of scale 2**(m+1), where the
outer triangle is q0=(2**m, 2**(m+1)), q1=(0, 0), q2=(2**(m+1), 0), and are
exposed as exact ``Fraction`` coordinates of the unit-base triangle.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.config import settings
from src.core.exceptions import DomainError, InvalidLevelError, SizeLimitError
from src.models.schemas.graph import GraphExport
from src.observability.logging import get_logger

logger = get_logger(__name__)

Lattice = Tuple[int, int]


class GraphKind(str, Enum):
    GAMMA = "gamma"
    OMEGA = "omega"


@dataclass(frozen=True, order=True)
class Vertex:
    """A vertex identified by its exact planar coordinates."""

    x: Fraction
    y: Fraction

    def reflect(self) -> "Vertex":
        return Vertex(1 - self.x, self.y)

    def scaled(self, den: int) -> Tuple[int, int]:
        """Integer coordinates at the given common denominator."""
        return int(self.x * den), int(self.y * den)


Q0 = Vertex(Fraction(1, 2), Fraction(1))
Q1 = Vertex(Fraction(0), Fraction(0))
Q2 = Vertex(Fraction(1), Fraction(0))
CORNERS = (Q0, Q1, Q2)


def image(word: Sequence[int], point: Vertex) -> Vertex:
    """Apply ``F_{w1} o F_{w2} o ... o F_{wn}`` to a point."""
    x, y = point.x, point.y
    for letter in reversed(word):
        q = CORNERS[letter]
        x, y = (x + q.x) / 2, (y + q.y) / 2
    return Vertex(x, y)


@dataclass(frozen=True)
class GraphApprox:
    """An immutable level-m graph with boundary, skeleton and cell structure."""

    level: int
    kind: GraphKind
    vertices: Tuple[Vertex, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    boundary: Tuple[int, ...]
    interior: Tuple[int, ...]
    skeleton: Tuple[int, ...]
    cells: Tuple[Tuple[int, int, int], ...]
    reflection: Tuple[int, ...]
    _edges: Tuple[Tuple[int, int], ...] = field(default=(), repr=False)

    @cached_property
    def index(self) -> Dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return self._edges

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def __len__(self) -> int:
        return len(self.vertices)


def _check_level(m: int, max_level: Optional[int]) -> None:
    limit = settings.MAX_GRAPH_LEVEL if max_level is None else max_level
    if m < 0:
        raise InvalidLevelError(m, "graph levels start at 0")
    if m > limit:
        raise SizeLimitError("graph", m, limit)


def _lattice_cells(m: int) -> List[Tuple[Lattice, Lattice, Lattice]]:
    """Level-m cells in word order, as (top, bottom-left, bottom-right) lattice points."""
    top = 2**m
    cells = [((top, 2 * top), (0, 0), (2 * top, 0))]
    for _ in range(m):
        refined = []
        for p0, p1, p2 in cells:
            m01 = ((p0[0] + p1[0]) // 2, (p0[1] + p1[1]) // 2)
            m02 = ((p0[0] + p2[0]) // 2, (p0[1] + p2[1]) // 2)
            m12 = ((p1[0] + p2[0]) // 2, (p1[1] + p2[1]) // 2)
            refined.append((p0, m01, m02))
            refined.append((m01, p1, m12))
            refined.append((m02, m12, p2))
        cells = refined
    return cells


def _assemble(
    m: int,
    kind: GraphKind,
    cells: List[Tuple[Lattice, Lattice, Lattice]],
    keep,
    boundary_points: Sequence[Lattice],
    skeleton_points: Sequence[Lattice],
) -> GraphApprox:
    scale = 2 ** (m + 1)
    points = sorted(
        {p for cell in cells for p in cell if keep(p)},
        key=lambda p: (-p[1], p[0]),
    )
    position = {p: i for i, p in enumerate(points)}

    neighbors: List[set] = [set() for _ in points]
    kept_cells = []
    for cell in cells:
        present = [p for p in cell if p in position]
        for a in range(len(present)):
            for b in range(a + 1, len(present)):
                i, j = position[present[a]], position[present[b]]
                neighbors[i].add(j)
                neighbors[j].add(i)
        if len(present) == 3:
            kept_cells.append(tuple(position[p] for p in cell))

    boundary = tuple(sorted(position[p] for p in boundary_points))
    boundary_set = set(boundary)
    interior = tuple(i for i in range(len(points)) if i not in boundary_set)
    reflection = tuple(position[(scale - x, y)] for x, y in points)
    edges = tuple(sorted((i, j) for i, ns in enumerate(neighbors) for j in ns if i < j))

    return GraphApprox(
        level=m,
        kind=kind,
        vertices=tuple(Vertex(Fraction(x, scale), Fraction(y, scale)) for x, y in points),
        adjacency=tuple(tuple(sorted(ns)) for ns in neighbors),
        boundary=boundary,
        interior=interior,
        skeleton=tuple(position[p] for p in skeleton_points),
        cells=tuple(kept_cells),
        reflection=reflection,
        _edges=edges,
    )


@lru_cache(maxsize=None)
def _gamma(m: int) -> GraphApprox:
    top = 2**m
    corners = [(top, 2 * top), (0, 0), (2 * top, 0)]
    return _assemble(m, GraphKind.GAMMA, _lattice_cells(m), lambda p: True, corners, ())


@lru_cache(maxsize=None)
def _omega(m: int) -> GraphApprox:
    top = 2**m
    cells = _lattice_cells(m)
    # Bottom cells are exactly the cells with a vertex on y = 0; their tops
    # are the apexes F_w q0 for w in {1,2}^m.
    apexes = [cell[0] for cell in cells if cell[1][1] == 0]
    skeleton = [(top // 2**i, 2 * top // 2**i) for i in range(m + 1)]
    return _assemble(
        m,
        GraphKind.OMEGA,
        cells,
        lambda p: p[1] > 0,
        [(top, 2 * top), *apexes],
        skeleton,
    )


def build_gamma(m: int, max_level: Optional[int] = None) -> GraphApprox:
    """
    Build the level-m graph of the gasket.

    Args:
        m: Level, 0 <= m <= max_level
        max_level: Size cap, settings.MAX_GRAPH_LEVEL when omitted

    Returns:
        Gamma_m with V0 as boundary
    """
    _check_level(m, max_level)
    g = _gamma(m)
    logger.debug("Built gamma graph", extra={"m": m, "vertices": len(g)})
    return g


def build_omega(m: int, max_level: Optional[int] = None) -> GraphApprox:
    """
    Build the level-m graph of the domain: Gamma_m without the bottom row.

    The boundary is q0 together with the 2**m apexes of the bottom cells.
    """
    if m == 0:
        raise InvalidLevelError(m, "the level-0 domain graph has no interior structure")
    _check_level(m, max_level)
    g = _omega(m)
    logger.debug(
        "Built omega graph",
        extra={"m": m, "vertices": len(g), "interior": len(g.interior)},
    )
    return g


def build_graph(kind: GraphKind, m: int, max_level: Optional[int] = None) -> GraphApprox:
    if kind == GraphKind.GAMMA:
        return build_gamma(m, max_level)
    return build_omega(m, max_level)


def skeleton(g: GraphApprox) -> List[Vertex]:
    """The chain q0, F1 q0, ..., F1^m q0 of a domain graph."""
    if g.kind != GraphKind.OMEGA:
        raise DomainError("skeleton is defined for domain graphs only", value=g.kind.value)
    return [g.vertices[i] for i in g.skeleton]


def interior_count(m: int) -> int:
    """Number of interior vertices of the level-m domain graph."""
    return (3 ** (m + 1) - 1) // 2 - 2 ** (m + 1)


def vertex_count(m: int) -> int:
    """Number of vertices of the level-m domain graph."""
    return (3 ** (m + 1) + 1) // 2 - 2**m


def gamma_vertex_count(m: int) -> int:
    return 3 * (3**m + 1) // 2


def to_export(g: GraphApprox) -> GraphExport:
    """Integer coordinates over the common denominator 2**(m+1)."""
    den = 2 ** (g.level + 1)
    return GraphExport(
        level=g.level,
        kind=g.kind.value,
        denominator=den,
        vertices=[[*v.scaled(den), den] for v in g.vertices],
        edges=[list(e) for e in g.edges],
        boundary=list(g.boundary),
        skeleton=list(g.skeleton),
    )
