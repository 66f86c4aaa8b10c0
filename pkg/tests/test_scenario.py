from __future__ import annotations

import math

import pytest

from flowplan.fields import JetField, RiverField, UniformField
from flowplan.grid import Circle, Rect
from flowplan.scenario import ScenarioError, bundled_scenario_path, load_scenario

MINIMAL = """
format_version = 1

[field]
kind = "uniform"
u = 0.1
v = -0.2

[vehicle]
speed_through_water = 2.0

[grid]
origin = [0.0, 0.0]
nx = 5
ny = 4
dx = 1.0
dy = 1.0
sectors = [1]

[route]
start = [0.0, 0.0]
goal = [4.0, 3.0]
"""


def write(tmp_path, text, name="case.scenario"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestBundledScenarios:
    def test_river_parameters(self):
        sc = load_scenario(bundled_scenario_path("river"))
        assert isinstance(sc.field, RiverField)
        assert sc.field.width == 300.0
        assert sc.field.peak_speed == 1.8
        assert sc.vehicle.speed_through_water == 2.2
        assert (sc.nx, sc.ny) == (31, 13)
        assert (sc.dx, sc.dy) == (10.0, 5.0)
        assert sc.sectors == (1, 2, 3)
        assert sc.start == (0.0, 30.0)
        assert sc.goal == (300.0, 30.0)
        assert sc.t0 == 0.0
        assert sc.cost.large_weight == 1e9

    def test_jet_parameters(self):
        sc = load_scenario(bundled_scenario_path("jet"))
        assert isinstance(sc.field, JetField)
        assert sc.field.mean_amplitude == 1.2
        assert sc.field.oscillation_amplitude == 0.3
        assert sc.field.oscillation_frequency == 0.4
        assert sc.field.phase == pytest.approx(math.pi / 2, rel=1e-15)
        assert sc.field.wavenumber == 0.84
        assert sc.field.phase_speed == 0.12
        assert sc.vehicle.speed_through_water == 0.5
        assert (sc.nx, sc.ny) == (41, 21)
        assert sc.oracle.dt == 0.005

    def test_jet_obstacles_shape(self):
        sc = load_scenario(bundled_scenario_path("jet_obstacles"))
        assert len(sc.obstacles) == 1
        assert isinstance(sc.obstacles[0], Rect)

    def test_unknown_bundle(self):
        with pytest.raises(ScenarioError):
            bundled_scenario_path("nonexistent")


class TestLoading:
    def test_minimal_scenario(self, tmp_path):
        sc = load_scenario(write(tmp_path, MINIMAL))
        assert isinstance(sc.field, UniformField)
        assert sc.name == "case"
        assert sc.t0 == 0.0
        # derived oracle defaults are usable
        assert sc.oracle.dt > 0
        assert sc.oracle.horizon > 0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError):
            load_scenario(tmp_path / "absent.scenario")

    def test_parse_error_reports_location(self, tmp_path):
        path = write(tmp_path, "format_version = = 1\n")
        with pytest.raises(ScenarioError, match="line"):
            load_scenario(path)

    def test_unknown_top_level_key(self, tmp_path):
        path = write(tmp_path, MINIMAL + "\nextra_section = 1\n")
        with pytest.raises(ScenarioError, match="extra_section"):
            load_scenario(path)

    def test_unknown_nested_key(self, tmp_path):
        text = MINIMAL.replace('kind = "uniform"', 'kind = "uniform"\nvelocity = 3.0')
        with pytest.raises(ScenarioError, match="field.velocity"):
            load_scenario(write(tmp_path, text))

    def test_typo_in_physics_parameter(self, tmp_path):
        text = MINIMAL.replace("speed_through_water = 2.0", "speed_thru_water = 2.0")
        with pytest.raises(ScenarioError):
            load_scenario(write(tmp_path, text))

    def test_wrong_format_version(self, tmp_path):
        with pytest.raises(ScenarioError, match="format_version"):
            load_scenario(write(tmp_path, MINIMAL.replace("format_version = 1",
                                                          "format_version = 99")))

    def test_bad_field_kind(self, tmp_path):
        with pytest.raises(ScenarioError, match="kind"):
            load_scenario(write(tmp_path, MINIMAL.replace('"uniform"', '"tide"')))

    def test_start_outside_grid(self, tmp_path):
        text = MINIMAL.replace("start = [0.0, 0.0]", "start = [-2.0, 0.0]")
        with pytest.raises(ScenarioError, match="route.start"):
            load_scenario(write(tmp_path, text))

    def test_goal_outside_grid(self, tmp_path):
        text = MINIMAL.replace("goal = [4.0, 3.0]", "goal = [4.0, 30.0]")
        with pytest.raises(ScenarioError, match="route.goal"):
            load_scenario(write(tmp_path, text))

    def test_start_inside_obstacle(self, tmp_path):
        text = MINIMAL + """
[[obstacles]]
kind = "circle"
center = [0.0, 0.0]
radius = 0.5
"""
        with pytest.raises(ScenarioError, match="obstacle"):
            load_scenario(write(tmp_path, text))

    def test_snapped_vertex_inside_obstacle(self, tmp_path):
        # the requested point is clear but its nearest lattice vertex is not
        text = MINIMAL.replace("start = [0.0, 0.0]", "start = [1.6, 0.0]") + """
[[obstacles]]
kind = "circle"
center = [2.0, 0.0]
radius = 0.3
"""
        with pytest.raises(ScenarioError, match="snaps"):
            load_scenario(write(tmp_path, text))

    def test_obstacles_parsed(self, tmp_path):
        text = MINIMAL + """
[[obstacles]]
kind = "circle"
center = [2.0, 2.0]
radius = 0.4

[[obstacles]]
kind = "polygon"
vertices = [[2.5, 0.4], [3.5, 0.4], [3.0, 1.2]]
"""
        sc = load_scenario(write(tmp_path, text))
        assert len(sc.obstacles) == 2
        assert isinstance(sc.obstacles[0], Circle)

    def test_bad_obstacle_geometry(self, tmp_path):
        text = MINIMAL + """
[[obstacles]]
kind = "circle"
center = [2.0, 2.0]
radius = -1.0
"""
        with pytest.raises(ScenarioError, match="obstacle"):
            load_scenario(write(tmp_path, text))

    def test_empty_sectors_rejected(self, tmp_path):
        with pytest.raises(ScenarioError, match="sectors"):
            load_scenario(write(tmp_path, MINIMAL.replace("sectors = [1]", "sectors = []")))

    def test_bad_sampling_mode(self, tmp_path):
        text = MINIMAL + "\n[cost]\nsampling = \"endpoint\"\n"
        with pytest.raises(ScenarioError, match="sampling"):
            load_scenario(write(tmp_path, text))

    def test_boolean_is_not_a_number(self, tmp_path):
        text = MINIMAL.replace("u = 0.1", "u = true")
        with pytest.raises(ScenarioError, match="field.u"):
            load_scenario(write(tmp_path, text))


class TestSnapping:
    def test_on_lattice_point(self, tmp_path):
        sc = load_scenario(write(tmp_path, MINIMAL))
        lattice, pos, dist = sc.snap((2.0, 3.0))
        assert lattice == (2, 3)
        assert pos == (2.0, 3.0)
        assert dist == 0.0

    def test_off_lattice_point(self, tmp_path):
        sc = load_scenario(write(tmp_path, MINIMAL))
        lattice, pos, dist = sc.snap((2.4, 2.6))
        assert lattice == (2, 3)
        assert pos == (2.0, 3.0)
        assert dist == pytest.approx(math.hypot(0.4, 0.4))
