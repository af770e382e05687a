"""Spectrum and ledger export schemas."""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class EigenvalueRow(BaseModel):
    """One distinct eigenvalue of a classified spectrum."""

    index: int = Field(..., ge=1, description="1-based position of the first copy")
    value: float = Field(..., description="Graph eigenvalue")
    multiplicity: int = Field(..., ge=1, description="Eigenspace dimension")
    type: Literal["L", "P+", "P-", "M"] = Field(..., description="Eigenvalue type")
    series: Optional[int] = Field(None, description="Localized series 5 or 6")
    birth: Optional[int] = Field(None, description="Generation of birth")
    branch_word: str = Field("", description="Branches taken since birth, e.g. '-+-'")
    interval_lo: Optional[str] = Field(None, description="Isolating interval lower end")
    interval_hi: Optional[str] = Field(None, description="Isolating interval upper end")
    sequence: Optional[str] = Field(
        None, description="Branch sequence, e.g. 'm0=2;start=5.0;word=+-;weak=false'"
    )


class OracleRow(BaseModel):
    """One merged eigenvalue of the dense eigensolver."""

    level: int
    bc: Literal["dirichlet", "neumann"]
    index: int = Field(..., ge=1)
    eigenvalue: float
    multiplicity: int = Field(..., ge=1)
    sym_dim: int = Field(..., ge=0, description="Dimension of the reflection-even part")
    skew_dim: int = Field(..., ge=0, description="Dimension of the reflection-odd part")


class LedgerRow(BaseModel):
    """Eigenspace dimensions by type at one level."""

    level: int = Field(..., ge=1)
    bc: Literal["dirichlet", "neumann"]
    localized: int = Field(..., ge=0)
    primitive_sym: int = Field(..., ge=0)
    primitive_skew: int = Field(..., ge=0)
    miniaturized: int = Field(..., ge=0)
    total: int = Field(..., ge=0)


class SpectrumExport(BaseModel):
    """A classified spectrum with its ledger."""

    level: int = Field(..., ge=1)
    bc: Literal["dirichlet", "neumann"]
    rows: List[EigenvalueRow] = Field(default_factory=list)
    ledger: LedgerRow
