"""Application configuration using pydantic-settings."""

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Literal, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.exceptions import ConfigError


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "gasket-spectra"
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "json"

    # Size limits
    MAX_GRAPH_LEVEL: int = Field(8, description="Largest graph level that may be built")
    MAX_POLY_LEVEL: int = Field(9, description="Largest polynomial family level")

    # Tolerances
    TOL_ROOT: float = 1e-12
    TOL_ORACLE: float = 1e-7
    SKELETON_TOL: float = 1e-8
    NEAR_TIE_WARN: float = 1e-5

    # Limits of scaled eigenvalue sequences
    LIMIT_TOL: float = 1e-12
    LIMIT_MAX_LEVELS: int = 60
    LIMIT_LEVEL_CAP: int = 9

    # Dense eigensolver
    ORACLE_METHOD: str = "jacobi"
    JACOBI_MAX_SWEEPS: int = 100
    JACOBI_TOL: float = 1e-12

    # Outputs
    OUTPUT_DIR: str = "out"
    OUTPUT_FORMAT: str = "csv"
    GOLDEN_DIR: str = "golden"

    # Observability
    METRICS_ENABLED: bool = True
    METRICS_FILE: Optional[str] = None

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        v = v.upper()
        if v not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of {valid_levels}")
        return v

    @field_validator("ORACLE_METHOD")
    @classmethod
    def validate_oracle_method(cls, v: str) -> str:
        """Validate eigensolver method."""
        valid_methods = {"jacobi", "lapack"}
        v = v.lower()
        if v not in valid_methods:
            raise ValueError(f"ORACLE_METHOD must be one of {valid_methods}")
        return v

    @field_validator("OUTPUT_FORMAT")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        """Validate output format."""
        v = v.lower()
        if v not in {"csv", "json"}:
            raise ValueError("OUTPUT_FORMAT must be 'csv' or 'json'")
        return v

    @field_validator("TOL_ROOT", "TOL_ORACLE", "SKELETON_TOL", "LIMIT_TOL", "JACOBI_TOL")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Tolerances must be positive."""
        if v <= 0:
            raise ValueError("tolerances must be positive")
        return v


class RunConfig(BaseModel):
    """Per-invocation configuration of the command line.

    Built from ``settings``, then overridden by an optional config file and
    finally by explicit flags.
    """

    max_graph_level: int = Field(8, description="Largest graph level")
    max_poly_level: int = Field(9, description="Largest polynomial level")
    tol_root: float = Field(1e-12, gt=0, description="Root refinement width")
    tol_oracle: float = Field(1e-7, gt=0, description="Oracle comparison tolerance")
    output_dir: Path = Field(Path("out"), description="Directory for written files")
    format: Literal["csv", "json"] = Field("csv", description="Output file format")
    oracle_method: Literal["jacobi", "lapack"] = "jacobi"
    golden_dir: Path = Path("golden")

    @model_validator(mode="after")
    def check_levels(self) -> "RunConfig":
        """Both level caps must allow at least level 2."""
        if self.max_graph_level < 2 or self.max_poly_level < 2:
            raise ValueError("max_level must be at least 2")
        return self

    @classmethod
    def from_settings(cls, source: Optional[Settings] = None) -> "RunConfig":
        """Create the default run config from application settings."""
        s = source or settings
        return cls(
            max_graph_level=s.MAX_GRAPH_LEVEL,
            max_poly_level=s.MAX_POLY_LEVEL,
            tol_root=s.TOL_ROOT,
            tol_oracle=s.TOL_ORACLE,
            output_dir=Path(s.OUTPUT_DIR),
            format=s.OUTPUT_FORMAT,
            oracle_method=s.ORACLE_METHOD,
            golden_dir=Path(s.GOLDEN_DIR),
        )

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Return a copy with the non-None overrides applied and revalidated."""
        data = self.model_dump()
        for key, value in overrides.items():
            if value is None:
                continue
            if key == "max_level":
                data["max_graph_level"] = value
                data["max_poly_level"] = max(value, data["max_poly_level"])
                continue
            if key not in data:
                raise ConfigError(f"Unknown configuration key: {key}", key=key)
            data[key] = value
        try:
            return RunConfig(**data)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def apply(self, target: Optional[Settings] = None) -> None:
        """Push the limits and tolerances into the settings the services read."""
        s = target or settings
        s.MAX_GRAPH_LEVEL = self.max_graph_level
        s.MAX_POLY_LEVEL = self.max_poly_level
        s.TOL_ROOT = self.tol_root
        s.TOL_ORACLE = self.tol_oracle
        s.ORACLE_METHOD = self.oracle_method


def load_config_file(path: Path) -> Dict[str, Any]:
    """
    Read a run-config file.

    YAML files (``.yaml``/``.yml``) are parsed with ``yaml.safe_load``; any
    other file is read as ``key=value`` lines with ``#`` comments.

    Args:
        path: Config file location

    Returns:
        Mapping of RunConfig keys to raw values
    """
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}", key=str(path))

    text = path.read_text(encoding="utf-8")
    if path.suffix in {".yaml", ".yml"}:
        loaded = yaml.safe_load(text) or {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"Config file must hold a mapping: {path}", key=str(path))
        return dict(loaded)

    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"Malformed line {lineno} in {path}: {raw!r}", key=str(path))
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
