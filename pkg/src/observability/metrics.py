"""Prometheus metrics for observability."""

from typing import Optional

from prometheus_client import (
    REGISTRY,
    Counter,
    Gauge,
    Histogram,
    Info,
    generate_latest,
    write_to_textfile,
)


class MetricsCollector:
    """Centralized metrics collection for gasket-spectra."""

    def __init__(self):
        self.app_info = Info(
            "spectra_app",
            "Application information",
        )

        # Polynomial layer
        self.polys_built = Counter(
            "spectra_polynomials_built_total",
            "Determinant polynomials constructed",
            ["family"],
        )
        self.roots_isolated = Counter(
            "spectra_roots_isolated_total",
            "Polynomial roots isolated",
            ["family", "method"],
        )
        self.sturm_fallbacks = Counter(
            "spectra_sturm_fallbacks_total",
            "Bracket isolations that fell back to Sturm sequences",
            ["family"],
        )
        self.isolation_duration = Histogram(
            "spectra_root_isolation_duration_seconds",
            "Time to isolate all roots of one family level",
            ["family"],
            buckets=[0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0],
        )

        # Dense eigensolver
        self.jacobi_sweeps = Histogram(
            "spectra_jacobi_sweeps",
            "Jacobi sweeps needed to converge",
            buckets=[2, 4, 6, 8, 10, 12, 16, 25, 50, 100],
        )
        self.eigensolve_duration = Histogram(
            "spectra_eigensolve_duration_seconds",
            "Time to diagonalize one Laplacian matrix",
            ["method"],
            buckets=[0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0],
        )
        self.matrix_dimension = Gauge(
            "spectra_last_matrix_dimension",
            "Dimension of the most recently diagonalized matrix",
        )

        # Verification
        self.checks = Counter(
            "spectra_verify_checks_total",
            "Invariant checks run",
            ["suite", "outcome"],
        )

    def set_app_info(self, version: str, oracle_method: str):
        """Set application info labels."""
        self.app_info.info({"version": version, "oracle_method": oracle_method})

    def record_poly_built(self, family: str):
        """Record a polynomial family level built."""
        self.polys_built.labels(family=family).inc()

    def record_isolation(self, family: str, method: str, count: int, duration_seconds: float):
        """Record a completed root isolation."""
        self.roots_isolated.labels(family=family, method=method).inc(count)
        self.isolation_duration.labels(family=family).observe(duration_seconds)

    def record_sturm_fallback(self, family: str):
        """Record a Sturm fallback."""
        self.sturm_fallbacks.labels(family=family).inc()

    def record_eigensolve(
        self,
        method: str,
        dimension: int,
        duration_seconds: float,
        sweeps: Optional[int] = None,
    ):
        """Record a dense eigensolve."""
        self.eigensolve_duration.labels(method=method).observe(duration_seconds)
        self.matrix_dimension.set(dimension)
        if sweeps is not None:
            self.jacobi_sweeps.observe(sweeps)

    def record_check(self, suite: str, passed: bool):
        """Record one verification check."""
        self.checks.labels(suite=suite, outcome="pass" if passed else "fail").inc()

    def get_metrics(self) -> bytes:
        """Get all metrics in Prometheus format."""
        return generate_latest(REGISTRY)

    def write(self, path: str) -> None:
        """Write the registry in text exposition format."""
        write_to_textfile(path, REGISTRY)


# Global metrics instance
metrics = MetricsCollector()
