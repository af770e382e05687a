"""Tests for the graph approximations."""

from fractions import Fraction

import pytest


@pytest.mark.unit
class TestGraphCounts:
    """Vertex, interior and edge counts."""

    @pytest.mark.parametrize("m,expected", [(0, 3), (1, 6), (2, 15), (3, 42)])
    def test_gamma_vertex_count(self, m, expected):
        from src.services.graphs import build_gamma
        from src.services.graphs.builder import gamma_vertex_count

        assert len(build_gamma(m)) == expected
        assert gamma_vertex_count(m) == expected

    @pytest.mark.parametrize("m,vertices,interior", [(1, 3, 0), (2, 10, 5), (3, 33, 24), (4, 106, 89)])
    def test_omega_counts(self, m, vertices, interior):
        from src.services.graphs import build_omega, interior_count, vertex_count

        g = build_omega(m)
        assert len(g) == vertices == vertex_count(m)
        assert len(g.interior) == interior == interior_count(m)
        assert len(g.boundary) == 2**m + 1

    def test_gamma_edges_three_per_cell(self):
        from src.services.graphs import build_gamma

        for m in range(4):
            g = build_gamma(m)
            assert len(g.edges) == 3 ** (m + 1)
            assert len(g.cells) == 3**m

    def test_omega_2_drops_bottom_cell_edges(self, omega_2):
        assert len(omega_2.edges) == 15

    def test_gamma_interior_degree_four(self, gamma_1):
        for i in gamma_1.interior:
            assert gamma_1.degree(i) == 4


@pytest.mark.unit
class TestGraphStructure:
    """Coordinates, reflection and skeleton."""

    def test_vertices_are_exact_and_unique(self, omega_3):
        assert len(set(omega_3.vertices)) == len(omega_3)
        for v in omega_3.vertices:
            assert isinstance(v.x, Fraction)
            assert v.y > 0

    def test_reflection_is_an_involution(self, omega_3):
        r = omega_3.reflection
        assert all(r[r[i]] == i for i in range(len(omega_3)))
        for i, v in enumerate(omega_3.vertices):
            assert omega_3.vertices[r[i]] == v.reflect()

    def test_skeleton_chain(self, omega_3):
        from src.services.graphs import skeleton
        from src.services.graphs.builder import Q0

        chain = skeleton(omega_3)
        assert len(chain) == 4
        assert chain[0] == Q0
        assert chain[-1].y == Fraction(1, 8)

    def test_skeleton_requires_domain_graph(self, gamma_1):
        from src.core.exceptions import DomainError
        from src.services.graphs import skeleton

        with pytest.raises(DomainError):
            skeleton(gamma_1)

    def test_image_of_corner(self):
        from src.services.graphs import image
        from src.services.graphs.builder import Q0, Q1, Vertex

        assert image((1,), Q0) == Vertex(Fraction(1, 4), Fraction(1, 2))
        assert image((), Q1) == Q1


@pytest.mark.unit
class TestGraphErrors:
    """Level validation."""

    def test_level_above_cap(self):
        from src.core.exceptions import SizeLimitError
        from src.services.graphs import build_gamma

        with pytest.raises(SizeLimitError):
            build_gamma(99)

    def test_negative_level(self):
        from src.core.exceptions import InvalidLevelError
        from src.services.graphs import build_gamma

        with pytest.raises(InvalidLevelError):
            build_gamma(-1)

    def test_domain_graph_needs_level_one(self):
        from src.core.exceptions import InvalidLevelError
        from src.services.graphs import build_omega

        with pytest.raises(InvalidLevelError):
            build_omega(0)


@pytest.mark.unit
class TestGraphExport:
    """JSON export over the common denominator."""

    def test_level_zero_triangle(self):
        from src.services.graphs import build_gamma, to_export

        export = to_export(build_gamma(0))
        assert export.denominator == 2
        assert export.vertices == [[1, 2, 2], [0, 0, 2], [2, 0, 2]]
        assert export.edges == [[0, 1], [0, 2], [1, 2]]
        assert export.boundary == [0, 1, 2]

    def test_omega_export_counts(self, omega_2):
        from src.services.graphs import to_export

        export = to_export(omega_2)
        assert export.kind == "omega"
        assert export.denominator == 8
        assert len(export.vertices) == 10
        assert len(export.skeleton) == 3
