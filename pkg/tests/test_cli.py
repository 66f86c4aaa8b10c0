from __future__ import annotations

import pytest

from flowplan.cli import EXIT_ERROR, EXIT_NO_PATH, EXIT_OK, main
from flowplan.scenario import bundled_scenario_path

FAST_UNIFORM = """
format_version = 1
name = "fast-uniform"

[field]
kind = "uniform"
u = 0.2
v = 0.1

[vehicle]
speed_through_water = 2.0

[grid]
origin = [0.0, 0.0]
nx = 7
ny = 5
dx = 1.0
dy = 1.0
sectors = [1, 2]

[route]
start = [0.0, 2.0]
goal = [6.0, 2.0]

[oracle]
dt = 0.02
horizon = 10.0
position_tolerance = 0.25
scan_samples = 180
"""

IMPOSSIBLE = FAST_UNIFORM.replace("u = 0.2", "u = -3.0").replace("v = 0.1", "v = 0.0")


@pytest.fixture()
def uniform_file(tmp_path):
    path = tmp_path / "uniform.scenario"
    path.write_text(FAST_UNIFORM)
    return path


class TestGridStats:
    def test_prints_counts(self, capsys):
        code = main(["grid-stats", str(bundled_scenario_path("river"))])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "403" in out
        assert "2964" in out and "5676" in out and "10612" in out

    def test_missing_file_errors(self, capsys):
        code = main(["grid-stats", "/nonexistent/file.scenario"])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err


class TestPlan:
    def test_plan_exports_report_and_paths(self, tmp_path, uniform_file, capsys):
        out_dir = tmp_path / "out"
        code = main(["plan", str(uniform_file), "--out", str(out_dir)])
        assert code == EXIT_OK
        assert (out_dir / "report.csv").exists()
        assert (out_dir / "report-path-sector-1.csv").exists()
        assert "sector-1" in capsys.readouterr().out

    def test_plan_json_export(self, tmp_path, uniform_file):
        out_dir = tmp_path / "out"
        code = main(["plan", str(uniform_file), "--out", str(out_dir), "--format", "json"])
        assert code == EXIT_OK
        assert (out_dir / "report.json").exists()

    def test_no_feasible_path_exit_code(self, tmp_path, capsys):
        path = tmp_path / "impossible.scenario"
        path.write_text(IMPOSSIBLE)
        code = main(["plan", str(path)])
        assert code == EXIT_NO_PATH
        assert "no feasible path" in capsys.readouterr().out

    def test_invalid_scenario_is_an_error(self, tmp_path, capsys):
        path = tmp_path / "broken.scenario"
        path.write_text(FAST_UNIFORM + "\nbogus_key = 3\n")
        assert main(["plan", str(path)]) == EXIT_ERROR


class TestCompare:
    def test_compare_prints_oracle_rows(self, uniform_file, capsys):
        code = main(["compare", str(uniform_file)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "direct-drive" in out
        assert "optimal-control" in out

    def test_impossible_scenario_still_exits_two(self, tmp_path):
        path = tmp_path / "impossible.scenario"
        path.write_text(IMPOSSIBLE)
        assert main(["compare", str(path)]) == EXIT_NO_PATH


class TestOracle:
    def test_oracle_writes_trajectory(self, tmp_path, uniform_file, capsys):
        out_dir = tmp_path / "out"
        code = main(["oracle", str(uniform_file), "--out", str(out_dir)])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "optimal-control" in out
        csv_path = out_dir / "optimal-trajectory.csv"
        assert csv_path.exists()
        header = csv_path.read_text().splitlines()[0]
        assert header == "t,x,y,heading"

    def test_oracle_failure_is_an_error(self, tmp_path, capsys):
        # horizon far too short for the crossing
        text = FAST_UNIFORM.replace("horizon = 10.0", "horizon = 1.0")
        path = tmp_path / "short.scenario"
        path.write_text(text)
        code = main(["oracle", str(path)])
        assert code == EXIT_ERROR
        assert "error:" in capsys.readouterr().err
