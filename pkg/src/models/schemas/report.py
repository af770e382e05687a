"""Verification, counting and experiment report schemas."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one invariant check."""

    suite: str = Field(..., description="signs, interlacing, ledgers or oracle")
    name: str = Field(..., description="What was checked, e.g. 'p_5(2)'")
    passed: bool
    detail: str = Field("", description="Observed value or failure description")
    context: Dict[str, Any] = Field(default_factory=dict)

    def line(self) -> str:
        status = "OK" if self.passed else "FAIL"
        text = f"{self.name} {self.detail}".strip()
        return f"[{self.suite}] {text} {status}"


class VerifyReport(BaseModel):
    """All checks of one verify run."""

    max_level: int
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def extend(self, checks: List[CheckResult]) -> None:
        self.checks.extend(checks)


class CountingRow(BaseModel):
    """Counting functions at one breakpoint."""

    x: float
    rho_sg: int = Field(..., ge=0, description="Count on the gasket minus its corners")
    rho_omega: int = Field(..., ge=0, description="Count on the domain")
    difference: int
    normalized: Optional[float] = Field(
        None, description="difference / (x^(log2/log5) log x), undefined for x <= 1"
    )


class ConjectureRow(BaseModel):
    """One instance of an empirical counting experiment."""

    m: int
    k: int
    threshold: float
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs
