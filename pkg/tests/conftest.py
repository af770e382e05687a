"""Pytest configuration and fixtures."""

import os
from pathlib import Path

import pytest

# Set testing environment before importing settings
os.environ["TESTING"] = "true"
os.environ["LOG_LEVEL"] = "WARNING"
os.environ["METRICS_ENABLED"] = "false"

REPO_ROOT = Path(__file__).resolve().parent.parent


# =============================================================================
# Graph Fixtures
# =============================================================================


@pytest.fixture
def omega_2():
    """Level-2 domain graph (10 vertices, 5 interior)."""
    from src.services.graphs import build_omega

    return build_omega(2)


@pytest.fixture
def omega_3():
    """Level-3 domain graph."""
    from src.services.graphs import build_omega

    return build_omega(3)


@pytest.fixture
def gamma_1():
    """Level-1 gasket graph (6 vertices)."""
    from src.services.graphs import build_gamma

    return build_gamma(1)


# =============================================================================
# Table Fixtures
# =============================================================================


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return REPO_ROOT / "golden"


def read_golden(name: str):
    """(value, multiplicity, type) rows of a golden spectrum table."""
    lines = (REPO_ROOT / "golden" / name).read_text(encoding="utf-8").strip().split("\n")[1:]
    rows = []
    for line in lines:
        value, mult, etype = line.split(",")
        rows.append((float(value), int(mult), etype))
    return rows


@pytest.fixture(scope="session")
def golden_m2():
    return read_golden("dirichlet_m2.csv")


@pytest.fixture(scope="session")
def golden_m3():
    return read_golden("dirichlet_m3.csv")


@pytest.fixture(scope="session")
def golden_m4():
    return read_golden("dirichlet_m4.csv")


# =============================================================================
# CLI Fixtures
# =============================================================================


@pytest.fixture
def runner():
    from typer.testing import CliRunner

    return CliRunner()


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    path = tmp_path / "out"
    path.mkdir()
    return path
