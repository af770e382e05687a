"""Tests for settings and run configuration."""

from pathlib import Path

import pytest


@pytest.mark.unit
class TestRunConfig:
    """Merging of defaults, config files and flags."""

    def test_defaults_from_settings(self):
        from src.core.config import RunConfig, Settings

        cfg = RunConfig.from_settings(Settings(MAX_GRAPH_LEVEL=6, ORACLE_METHOD="LAPACK"))
        assert cfg.max_graph_level == 6
        assert cfg.oracle_method == "lapack"
        assert cfg.format == "csv"

    def test_merge_skips_none(self):
        from src.core.config import RunConfig

        cfg = RunConfig().merged({"tol_root": 1e-10, "format": None})
        assert cfg.tol_root == 1e-10
        assert cfg.format == "csv"

    def test_max_level_sets_both_caps(self):
        from src.core.config import RunConfig

        cfg = RunConfig(max_poly_level=5).merged({"max_level": 7})
        assert cfg.max_graph_level == 7
        assert cfg.max_poly_level == 7

    def test_string_values_are_coerced(self):
        from src.core.config import RunConfig

        cfg = RunConfig().merged({"max_graph_level": "6", "output_dir": "results"})
        assert cfg.max_graph_level == 6
        assert cfg.output_dir == Path("results")

    def test_unknown_key(self):
        from src.core.config import RunConfig
        from src.core.exceptions import ConfigError

        with pytest.raises(ConfigError) as exc_info:
            RunConfig().merged({"colour": "blue"})
        assert exc_info.value.details == [{"key": "colour"}]

    def test_level_below_two(self):
        from src.core.config import RunConfig
        from src.core.exceptions import ConfigError

        with pytest.raises(ConfigError):
            RunConfig().merged({"max_level": 1})

    def test_bad_method(self):
        from src.core.config import RunConfig
        from src.core.exceptions import ConfigError

        with pytest.raises(ConfigError):
            RunConfig().merged({"oracle_method": "qr"})

    def test_apply_pushes_limits(self):
        from src.core.config import RunConfig, Settings

        target = Settings()
        RunConfig(max_graph_level=4, tol_oracle=1e-6).apply(target)
        assert target.MAX_GRAPH_LEVEL == 4
        assert target.TOL_ORACLE == 1e-6


@pytest.mark.unit
class TestConfigFiles:
    def test_key_value_file(self, tmp_path):
        from src.core.config import load_config_file

        path = tmp_path / "run.conf"
        path.write_text("# limits\nmax_graph_level = 6\n\ntol_root=1e-10  # tighter\n")
        assert load_config_file(path) == {"max_graph_level": "6", "tol_root": "1e-10"}

    def test_yaml_file(self, tmp_path):
        from src.core.config import load_config_file

        path = tmp_path / "run.yaml"
        path.write_text("max_graph_level: 6\noracle_method: lapack\n")
        assert load_config_file(path) == {"max_graph_level": 6, "oracle_method": "lapack"}

    def test_malformed_line(self, tmp_path):
        from src.core.config import load_config_file
        from src.core.exceptions import ConfigError

        path = tmp_path / "run.conf"
        path.write_text("max_graph_level\n")
        with pytest.raises(ConfigError):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        from src.core.config import load_config_file
        from src.core.exceptions import ConfigError

        with pytest.raises(ConfigError):
            load_config_file(tmp_path / "absent.yaml")

    def test_yaml_must_be_mapping(self, tmp_path):
        from src.core.config import load_config_file
        from src.core.exceptions import ConfigError

        path = tmp_path / "run.yml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            load_config_file(path)

    def test_shipped_defaults_merge(self):
        from src.core.config import RunConfig, load_config_file

        from tests.conftest import REPO_ROOT

        values = load_config_file(REPO_ROOT / "config" / "defaults.yaml")
        assert RunConfig().merged(values).max_graph_level >= 2


@pytest.mark.unit
class TestSettings:
    def test_invalid_log_level(self):
        from pydantic import ValidationError

        from src.core.config import Settings

        with pytest.raises(ValidationError):
            Settings(LOG_LEVEL="LOUD")

    def test_tolerances_positive(self):
        from pydantic import ValidationError

        from src.core.config import Settings

        with pytest.raises(ValidationError):
            Settings(TOL_ROOT=0.0)
