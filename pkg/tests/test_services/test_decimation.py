"""Tests for the decimation map, its branches and eigenfunction extension."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


@pytest.mark.unit
class TestBranches:
    """Inverse branches of f and the all-minus limit."""

    @given(st.floats(min_value=0.0, max_value=6.25))
    @settings(max_examples=100, deadline=None)
    def test_branches_invert_f(self, x):
        from src.services.decimation import Branch, f_map, phi

        for branch in Branch:
            assert f_map(phi(branch, x)) == pytest.approx(x, abs=1e-9)

    def test_known_branch_values(self):
        from src.services.decimation import Branch, phi

        assert phi(Branch.PLUS, 6.0) == pytest.approx(3.0)
        assert phi(Branch.MINUS, 6.0) == pytest.approx(2.0)
        assert phi(Branch.MINUS, 0.0) == 0.0

    def test_phi_above_quarter_25_raises(self):
        from src.core.exceptions import DomainError
        from src.services.decimation import Branch, phi

        with pytest.raises(DomainError):
            phi(Branch.MINUS, 6.5)

    def test_f_iterate(self):
        from fractions import Fraction

        from src.services.decimation import f_iterate

        assert f_iterate(2, 1) == 6
        assert f_iterate(Fraction(1, 2), 2) == Fraction(9, 4) * (5 - Fraction(9, 4))

    def test_minus_iterate_shrinks_by_five(self):
        from src.services.decimation import phi_minus_iterate

        x = phi_minus_iterate(2.0, 10)
        assert 5.0 * phi_minus_iterate(2.0, 11) == pytest.approx(x, rel=1e-6)

    def test_Phi_of_two(self):
        from src.services.decimation import Phi

        assert 3.3 < Phi(2.0) < 3.45
        assert Phi(0.0) == 0.0

    def test_Phi_is_increasing(self):
        from src.services.decimation import Phi

        values = [Phi(z) for z in (0.5, 1.0, 2.0, 3.0, 5.0, 6.0)]
        assert values == sorted(values)

    def test_Phi_domain(self):
        from src.core.exceptions import DomainError
        from src.services.decimation import Phi

        with pytest.raises(DomainError):
            Phi(7.0)


@pytest.mark.unit
class TestBranchSequence:
    """Branch words, text form and limits."""

    def test_text_round_trip(self):
        from src.services.decimation import Branch, BranchSequence

        seq = BranchSequence(m0=2, start=5.0, branches=(Branch.MINUS, Branch.PLUS), weak=False)
        assert seq.to_text() == "m0=2;start=5.0;word=-+;weak=false"
        assert BranchSequence.from_text(seq.to_text()) == seq

    def test_malformed_text(self):
        from src.core.exceptions import DomainError
        from src.services.decimation import BranchSequence

        with pytest.raises(DomainError):
            BranchSequence.from_text("start=5.0")

    def test_generation_of_fixation(self):
        from src.services.decimation import Branch, BranchSequence

        seq = BranchSequence(m0=1, start=6.0, branches=(Branch.PLUS, Branch.MINUS))
        assert seq.word == "+-"
        assert seq.m1 == 2
        assert BranchSequence(m0=3, start=5.0).m1 == 3

    def test_value_at(self):
        from src.core.exceptions import DomainError
        from src.services.decimation import Branch, BranchSequence

        seq = BranchSequence(m0=1, start=6.0, branches=(Branch.PLUS,))
        assert seq.value_at(1) == 6.0
        assert seq.value_at(2) == pytest.approx(3.0)
        with pytest.raises(DomainError):
            seq.value_at(0)

    def test_limit_of_all_minus_word_matches_Phi(self):
        from src.services.decimation import BranchSequence, Phi, limit_scaled

        assert limit_scaled(BranchSequence(m0=0, start=2.0)) == pytest.approx(Phi(2.0), rel=1e-9)

    def test_limit_scales_with_birth(self):
        from src.services.decimation import BranchSequence, limit_scaled

        early = limit_scaled(BranchSequence(m0=1, start=5.0))
        late = limit_scaled(BranchSequence(m0=2, start=5.0))
        assert late == pytest.approx(5.0 * early, rel=1e-9)


def _lowest_dirichlet_function(g):
    from src.services.oracle import dirichlet_matrix

    matrix = dirichlet_matrix(g)
    values, vectors = np.linalg.eigh(matrix.entries)
    u = np.zeros(len(g))
    u[list(matrix.index_map)] = vectors[:, 0]
    return float(values[0]), u


@pytest.mark.unit
class TestExtension:
    """Extension of gasket eigenfunctions one level up."""

    def test_extension_is_an_eigenfunction(self):
        from src.services.decimation import Branch, extend_eigenfunction, phi
        from src.services.decimation.extension import equation_residual
        from src.services.graphs import build_gamma

        g2, g3 = build_gamma(2), build_gamma(3)
        lam, u = _lowest_dirichlet_function(g2)
        lam_next = phi(Branch.MINUS, lam)

        extended = extend_eigenfunction(g3, u, lam_next)

        assert equation_residual(g3, extended, lam_next, g3.interior) < 1e-9
        assert np.allclose(extended[list(g3.boundary)], 0.0)

    def test_extension_then_restrict_is_identity(self):
        from src.services.decimation import Branch, extend_eigenfunction, phi, restrict
        from src.services.graphs import build_gamma

        g2, g3 = build_gamma(2), build_gamma(3)
        lam, u = _lowest_dirichlet_function(g2)

        extended = extend_eigenfunction(g3, u, phi(Branch.MINUS, lam))

        assert np.allclose(restrict(g2, g3, extended), u)

    def test_extended_value_is_in_next_spectrum(self):
        from src.services.decimation import Branch, phi
        from src.services.graphs import build_gamma
        from src.services.oracle import dirichlet_matrix

        lam, _ = _lowest_dirichlet_function(build_gamma(2))
        spectrum = np.linalg.eigvalsh(dirichlet_matrix(build_gamma(3)).entries)
        assert np.min(np.abs(spectrum - phi(Branch.MINUS, lam))) < 1e-9

    def test_forbidden_eigenvalue(self):
        from src.core.exceptions import ForbiddenEigenvalueError
        from src.services.decimation import extend_eigenfunction
        from src.services.graphs import build_gamma

        with pytest.raises(ForbiddenEigenvalueError):
            extend_eigenfunction(build_gamma(2), np.zeros(6), 5.0)

    def test_value_count_mismatch(self):
        from src.core.exceptions import DomainError
        from src.services.decimation import extend_eigenfunction
        from src.services.graphs import build_gamma

        with pytest.raises(DomainError):
            extend_eigenfunction(build_gamma(2), np.zeros(4), 1.0)


@pytest.mark.unit
class TestLocalizedExtension:
    """Random localized eigenfunctions of the domain carried one level up."""

    @pytest.mark.parametrize("m", [3, 4])
    @given(
        seed=st.integers(min_value=0, max_value=2**32 - 1),
        pick=st.integers(min_value=0, max_value=10**6),
    )
    @settings(max_examples=8, deadline=None)
    def test_extend_then_restrict(self, m, seed, pick):
        from src.services.assembly import localized_graph_eigenvalues
        from src.services.decimation import Branch, extend_eigenfunction, phi, restrict
        from src.services.decimation.extension import equation_residual
        from src.services.graphs import build_omega
        from src.services.oracle import BoundaryCondition, dirichlet_matrix

        records = localized_graph_eigenvalues(m, BoundaryCondition.DIRICHLET)
        rec = records[pick % len(records)]
        g, g_next = build_omega(m), build_omega(m + 1)
        matrix = dirichlet_matrix(g)
        values, vectors = np.linalg.eigh(matrix.entries)
        basis = vectors[:, np.abs(values - rec.value) < 1e-8]
        assert basis.shape[1] >= rec.multiplicity

        rng = np.random.default_rng(seed)
        u = np.zeros(len(g))
        u[list(matrix.index_map)] = basis @ rng.normal(size=basis.shape[1])

        # 6 continues only through the plus branch; phi_-(6) = 2 is forbidden
        branches = [Branch.PLUS] if rec.value == 6.0 else list(Branch)
        for branch in branches:
            lam_next = phi(branch, rec.value)
            extended = extend_eigenfunction(g_next, u, lam_next)
            scale = float(np.max(np.abs(extended)))
            assert equation_residual(g_next, extended, lam_next, g_next.interior) < 1e-8 * scale
            assert np.allclose(extended[list(g_next.boundary)], 0.0, atol=1e-12 * scale)
            assert np.allclose(restrict(g, g_next, extended), u)
