"""Tests for the command-line interface."""

import json

import pytest


def _invoke(runner, out_dir, *args):
    from src.main import app

    return runner.invoke(app, ["--output-dir", str(out_dir), *args])


@pytest.mark.integration
class TestGraphCommand:
    def test_writes_graph_json(self, runner, out_dir):
        result = _invoke(runner, out_dir, "graph", "--level", "2", "--kind", "omega")

        assert result.exit_code == 0, result.output
        assert "omega m=2: 10 vertices, 15 edges" in result.stdout
        data = json.loads((out_dir / "graph_omega_m2.json").read_text())
        assert len(data["vertices"]) == 10
        assert data["denominator"] == 8

    def test_level_above_cap_exits_2(self, runner, out_dir):
        result = _invoke(runner, out_dir, "graph", "--level", "99")
        assert result.exit_code == 2


@pytest.mark.integration
class TestSpectrumCommand:
    def test_dirichlet_level_one_is_empty(self, runner, out_dir):
        result = _invoke(runner, out_dir, "spectrum", "--level", "1", "--bc", "dirichlet")

        assert result.exit_code == 0, result.output
        lines = (out_dir / "spectrum_dirichlet_m1.csv").read_text().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("index,value,multiplicity,type")

    def test_classified_matches_oracle(self, runner, out_dir):
        result = _invoke(runner, out_dir, "spectrum", "-m", "3", "--method", "both")

        assert result.exit_code == 0, result.output
        assert "diff empty" in result.stdout
        assert (out_dir / "oracle_dirichlet_m3.csv").exists()
        diff = (out_dir / "diff_dirichlet_m3.txt").read_text().splitlines()
        assert diff[0] == "classified 24 oracle 24"

    def test_json_export(self, runner, out_dir):
        from src.main import app

        result = runner.invoke(
            app,
            ["--output-dir", str(out_dir), "--format", "json", "spectrum", "-m", "2", "--bc", "neumann"],
        )

        assert result.exit_code == 0, result.output
        data = json.loads((out_dir / "spectrum_neumann_m2.json").read_text())
        assert data["ledger"]["total"] == 10


@pytest.mark.integration
class TestVerifyCommand:
    def test_ledgers_pass(self, runner, out_dir):
        result = _invoke(runner, out_dir, "verify", "--suite", "ledgers", "--max-level", "4")

        assert result.exit_code == 0, result.output
        assert "checks passed" in result.stdout
        assert (out_dir / "verify_ledgers.txt").exists()


@pytest.mark.integration
class TestTablesCommand:
    def test_reproduces_golden(self, runner, out_dir, golden_dir):
        result = _invoke(
            runner, out_dir, "--golden-dir", str(golden_dir), "tables", "--which", "dirichlet-m3"
        )

        assert result.exit_code == 0, result.output
        assert "dirichlet-m3: 24 dimensions across 18 lines" in result.stdout
        assert (out_dir / "dirichlet_m3.csv").read_text() == (
            golden_dir / "dirichlet_m3.csv"
        ).read_text()

    def test_mismatch_exits_1(self, runner, out_dir, tmp_path):
        bad = tmp_path / "golden"
        bad.mkdir()
        (bad / "dirichlet_m2.csv").write_text("value,multiplicity,type\n1.000000,1,P+\n")

        result = _invoke(runner, out_dir, "--golden-dir", str(bad), "tables", "--which", "dirichlet-m2")

        assert result.exit_code == 1

    def test_update_golden(self, runner, out_dir, tmp_path):
        target = tmp_path / "golden"
        result = _invoke(
            runner,
            out_dir,
            "--golden-dir",
            str(target),
            "tables",
            "--which",
            "ledger-neumann",
            "--update-golden",
        )

        assert result.exit_code == 0, result.output
        assert (target / "ledger_neumann.csv").read_text().startswith("level,localized")


@pytest.mark.integration
class TestCountCommand:
    def test_nothing_below_ten(self, runner, out_dir):
        result = _invoke(runner, out_dir, "count", "--x-max", "10")

        assert result.exit_code == 0, result.output
        assert "rho_sg(10) = 0" in result.stdout
        assert "rho_omega(10) = 0" in result.stdout
        assert "difference nonnegative: yes" in result.stdout
        assert (out_dir / "counting.csv").exists()
        assert (out_dir / "weyl_sg.tsv").read_text() == "log_x\tratio\n"

    def test_non_positive_range_exits_2(self, runner, out_dir):
        result = _invoke(runner, out_dir, "count", "--x-max", "0")
        assert result.exit_code == 2


@pytest.mark.integration
class TestConjecturesCommand:
    def test_low_count_lines(self, runner, out_dir):
        result = _invoke(runner, out_dir, "conjectures", "--m-max", "4")

        assert result.exit_code == 0, result.output
        assert "[conjectures] low count m=4 k=3 19 vs 19 PASS" in result.stdout
        assert (out_dir / "conjectures.csv").exists()


@pytest.mark.integration
class TestPolyCommands:
    def test_poly_dump(self, runner, out_dir):
        result = _invoke(runner, out_dir, "poly", "--family", "P", "--level", "2")

        assert result.exit_code == 0, result.output
        assert "P_2: degree 3" in result.stdout
        lines = (out_dir / "poly_P_m2.txt").read_text().splitlines()
        assert lines[0] == "# family=P level=2 degree=3"
        assert len(lines) == 5

    def test_roots(self, runner, out_dir):
        result = _invoke(runner, out_dir, "roots", "--family", "PTilde", "--level", "2")

        assert result.exit_code == 0, result.output
        assert "PTilde_2: 2 roots (sturm)" in result.stdout
        rows = (out_dir / "roots_PTilde_m2.csv").read_text().splitlines()
        assert rows[0] == "family,level,index,value,lo,hi,bracket"
        assert len(rows) == 3
        assert all(row.startswith("PTilde,2,") for row in rows[1:])


@pytest.mark.integration
class TestConfiguration:
    def test_unknown_config_key_exits_2(self, runner, out_dir, tmp_path):
        config = tmp_path / "run.conf"
        config.write_text("colour = blue\n")

        result = _invoke(runner, out_dir, "--config", str(config), "graph", "--level", "1")

        assert result.exit_code == 2

    def test_bad_log_level(self, runner, out_dir):
        result = _invoke(runner, out_dir, "--log-level", "LOUD", "graph", "--level", "1")
        assert result.exit_code == 2
