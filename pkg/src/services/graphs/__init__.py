"""Graph approximations of the gasket and the domain."""

from src.services.graphs.builder import (
    GraphApprox,
    GraphKind,
    Vertex,
    build_gamma,
    build_graph,
    build_omega,
    image,
    interior_count,
    skeleton,
    to_export,
    vertex_count,
)

__all__ = [
    "GraphApprox",
    "GraphKind",
    "Vertex",
    "build_gamma",
    "build_graph",
    "build_omega",
    "image",
    "interior_count",
    "skeleton",
    "to_export",
    "vertex_count",
]
