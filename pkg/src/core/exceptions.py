"""Custom exceptions for gasket-spectra."""

from typing import Any, Dict, List, Optional


class SpectraException(Exception):
    """Base exception for all spectra errors."""

    def __init__(
        self,
        message: str,
        code: str = "INTERNAL_ERROR",
        details: Optional[List[Dict[str, Any]]] = None,
    ):
        self.message = message
        self.code = code
        self.details = details or []
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for reports."""
        result: Dict[str, Any] = {
            "code": self.code,
            "message": self.message,
        }
        if self.details:
            result["details"] = self.details
        return result


class ConfigError(SpectraException):
    """Raised when a run configuration is invalid."""

    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(
            message=message,
            code="CONFIG_ERROR",
            details=[{"key": key}] if key else None,
        )


class DomainError(SpectraException):
    """Raised when an argument lies outside the domain of an operation."""

    def __init__(self, message: str, value: Any = None):
        super().__init__(
            message=message,
            code="DOMAIN_ERROR",
            details=[{"value": str(value)}] if value is not None else None,
        )


class InvalidLevelError(DomainError):
    """Raised when a graph or polynomial level is not admissible."""

    def __init__(self, level: int, reason: str):
        super().__init__(f"Invalid level {level}: {reason}", value=level)
        self.level = level


class SizeLimitError(SpectraException):
    """Raised when a requested level exceeds the configured maximum."""

    def __init__(self, what: str, level: int, maximum: int):
        super().__init__(
            message=f"{what} level {level} exceeds configured maximum {maximum}",
            code="SIZE_LIMIT",
            details=[{"what": what, "level": level, "maximum": maximum}],
        )
        self.level = level
        self.maximum = maximum


class ExactnessError(SpectraException):
    """Raised when an exact polynomial division leaves a remainder."""

    def __init__(self, message: str, remainder_degree: Optional[int] = None):
        super().__init__(
            message=message,
            code="EXACTNESS_ERROR",
            details=[{"remainder_degree": remainder_degree}],
        )


class MultiplicityError(SpectraException):
    """Raised when root isolation meets a repeated root."""

    def __init__(self, message: str, gcd_degree: int):
        super().__init__(
            message=message,
            code="MULTIPLICITY_ERROR",
            details=[{"gcd_degree": gcd_degree}],
        )


class TheoryViolationError(SpectraException):
    """Raised when a structural statement about the spectra fails to hold."""

    def __init__(self, check: str, message: str, **context: Any):
        super().__init__(
            message=f"{check}: {message}",
            code="THEORY_VIOLATION",
            details=[{"check": check, **{k: str(v) for k, v in context.items()}}],
        )
        self.check = check


class ConvergenceError(SpectraException):
    """Raised when a scaled eigenvalue sequence does not settle."""

    def __init__(self, message: str, last: float, previous: float):
        super().__init__(
            message=message,
            code="CONVERGENCE_ERROR",
            details=[{"last": last, "previous": previous}],
        )


class SolverError(SpectraException):
    """Raised when the dense eigensolver fails."""

    def __init__(self, message: str, sweeps: int, off_norm: float):
        super().__init__(
            message=message,
            code="SOLVER_ERROR",
            details=[{"sweeps": sweeps, "off_norm": off_norm}],
        )


class ForbiddenEigenvalueError(SpectraException):
    """Raised when decimation is asked to pass through 2, 5 or 6."""

    def __init__(self, value: float):
        super().__init__(
            message=f"Eigenvalue {value} is forbidden for the extension step",
            code="FORBIDDEN_EIGENVALUE",
            details=[{"value": value}],
        )


class NotAnEigenvalueError(SpectraException):
    """Raised when the skeleton endpoint condition fails."""

    def __init__(self, value: float, residual: float):
        super().__init__(
            message=f"{value!r} does not satisfy the skeleton endpoint condition",
            code="NOT_AN_EIGENVALUE",
            details=[{"value": value, "residual": residual}],
        )
        self.residual = residual


class ReconstructionError(SpectraException):
    """Raised when a reconstructed eigenfunction fails its residual check."""

    def __init__(self, value: float, residual: float):
        super().__init__(
            message=f"Reconstructed eigenfunction for {value!r} has residual {residual:.3e}",
            code="RECONSTRUCTION_ERROR",
            details=[{"value": value, "residual": residual}],
        )


class InternalConsistencyError(SpectraException):
    """Raised when two independent computations of one object disagree."""

    def __init__(self, message: str, **context: Any):
        super().__init__(
            message=message,
            code="INTERNAL_CONSISTENCY",
            details=[{k: str(v) for k, v in context.items()}] if context else None,
        )


class GoldenMismatchError(SpectraException):
    """Raised when a regenerated table differs from its golden file."""

    def __init__(self, table: str, differences: List[str]):
        super().__init__(
            message=f"Table {table} differs from golden file in {len(differences)} line(s)",
            code="GOLDEN_MISMATCH",
            details=[{"table": table, "diff": line} for line in differences[:50]],
        )
        self.differences = differences
