"""Tests for the Laplacian matrices and the dense eigensolver."""

import numpy as np
import pytest


@pytest.mark.unit
class TestRoundRobin:
    @pytest.mark.parametrize("n", [2, 5, 8, 11])
    def test_every_pair_once(self, n):
        from src.services.oracle import round_robin

        seen = set()
        for ps, qs in round_robin(n):
            assert len(set(ps) | set(qs)) == 2 * len(ps)
            for p, q in zip(ps, qs):
                assert p < q
                seen.add((int(p), int(q)))
        assert len(seen) == n * (n - 1) // 2


@pytest.mark.unit
class TestJacobi:
    """Cyclic Jacobi against LAPACK."""

    def test_matches_eigh_on_random_matrix(self):
        from src.services.oracle import jacobi_eigh

        rng = np.random.default_rng(7)
        a = rng.normal(size=(12, 12))
        a = a + a.T
        values, vectors, sweeps = jacobi_eigh(a, want_vectors=True)

        assert np.allclose(values, np.linalg.eigvalsh(a), atol=1e-9)
        assert np.allclose(a @ vectors, vectors * values[None, :], atol=1e-8)
        assert sweeps > 0

    def test_diagonal_matrix_needs_no_sweeps(self):
        from src.services.oracle import jacobi_eigh

        values, vectors, sweeps = jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
        assert list(values) == [1.0, 2.0, 3.0]
        assert vectors is None
        assert sweeps == 0

    def test_sweep_limit(self):
        from src.core.exceptions import SolverError
        from src.services.oracle import jacobi_eigh

        a = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(SolverError):
            jacobi_eigh(a, max_sweeps=0)

    def test_off_norm_sees_tiny_entries_under_large_diagonal(self):
        from src.services.oracle.jacobi import off_norm

        offdiag = np.ones((3, 3)) - np.eye(3)
        a = np.diag([1e3] * 3) + 1e-13 * offdiag
        assert off_norm(a) == pytest.approx(np.sqrt(6.0) * 1e-13, rel=1e-9)
        assert off_norm(np.diag([1e3, 2.0, -5.0])) == 0.0

    def test_off_norm_matches_frobenius_of_offdiagonal(self):
        from src.services.oracle.jacobi import off_norm

        rng = np.random.default_rng(11)
        a = rng.normal(size=(9, 9))
        a = a + a.T
        expected = np.linalg.norm(a - np.diag(np.diag(a)))
        assert off_norm(a) == pytest.approx(expected, rel=1e-12)


@pytest.mark.unit
class TestLaplacians:
    """Spectra of the small graphs."""

    def test_domain_level_one_neumann(self):
        from src.services.graphs import build_omega
        from src.services.oracle import eigensolve, neumann_matrix

        spectrum = eigensolve(neumann_matrix(build_omega(1)))
        assert spectrum.multiset() == [
            (pytest.approx(0.0, abs=1e-9), 1),
            (pytest.approx(6.0), 2),
        ]

    def test_gasket_level_one_dirichlet(self, gamma_1):
        from src.services.oracle import dirichlet_matrix, eigensolve

        spectrum = eigensolve(dirichlet_matrix(gamma_1))
        assert spectrum.multiset() == [(pytest.approx(2.0), 1), (pytest.approx(5.0), 2)]

    def test_domain_level_two_dirichlet(self, omega_2, golden_m2):
        from src.services.oracle import dirichlet_matrix, eigensolve

        spectrum = eigensolve(dirichlet_matrix(omega_2))
        assert spectrum.dimension == 5
        assert [c.value for c in spectrum.clusters] == pytest.approx(
            [v for v, _, _ in golden_m2], abs=1e-6
        )

    def test_symmetry_split(self, omega_2):
        from src.services.oracle import dirichlet_matrix, eigensolve

        clusters = eigensolve(dirichlet_matrix(omega_2)).clusters
        assert sum(c.sym_dim for c in clusters) == 3
        assert sum(c.skew_dim for c in clusters) == 2

    def test_neumann_only_on_domain_graphs(self, gamma_1):
        from src.core.exceptions import DomainError
        from src.services.oracle import neumann_matrix

        with pytest.raises(DomainError):
            neumann_matrix(gamma_1)

    def test_neumann_vectors_solve_the_pencil(self, omega_2):
        from src.services.oracle import eigensolve, neumann_matrix

        matrix = neumann_matrix(omega_2)
        spectrum = eigensolve(matrix, want_vectors=True)
        for k, lam in enumerate(spectrum.eigenvalues):
            u = spectrum.eigenvectors[:, k]
            assert np.allclose(matrix.apply(u), lam * u, atol=1e-8)

    def test_lapack_and_jacobi_agree(self, omega_3):
        from src.services.oracle import dirichlet_matrix, eigensolve

        matrix = dirichlet_matrix(omega_3)
        jacobi = eigensolve(matrix, method="jacobi")
        lapack = eigensolve(matrix, method="lapack")
        assert np.allclose(jacobi.eigenvalues, lapack.eigenvalues, atol=1e-9)
        assert [c.multiplicity for c in jacobi.clusters] == [c.multiplicity for c in lapack.clusters]

    def test_oracle_rows(self, omega_2):
        from src.services.oracle import dirichlet_matrix, eigensolve

        rows = eigensolve(dirichlet_matrix(omega_2)).rows(2, "dirichlet")
        assert [r.index for r in rows] == [1, 2, 3, 4, 5]
        assert all(r.sym_dim + r.skew_dim == r.multiplicity for r in rows)
