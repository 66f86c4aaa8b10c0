"""Scenario files: everything one comparison run needs, in strict TOML.

A scenario bundles a current field, a vehicle, the lattice geometry with
one or more sector variants, optional obstacles, the route endpoints and
start time, edge-cost knobs and oracle knobs.  Parsing is strict: unknown
keys are rejected so a typo in a physics parameter fails loudly instead
of silently falling back to a default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .cost import SAMPLING_MODES, CostConfig, VehicleSpec
from .fields import JetField, RiverField, UniformField
from .grid import Circle, ConvexPolygon, GridSpec, Obstacle, Rect, point_blocked

FORMAT_VERSION = 1


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


@dataclass(frozen=True)
class OracleConfig:
    """Integration and scan knobs for the trajectory oracles."""

    dt: float
    horizon: float
    position_tolerance: float
    scan_samples: int = 720
    heading_tolerance: float = 2e-4
    direct_drive_step: float | None = None

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ValueError(f"oracle dt must be positive, got {self.dt}")
        if not self.horizon > 0:
            raise ValueError(f"oracle horizon must be positive, got {self.horizon}")
        if not self.position_tolerance > 0:
            raise ValueError(
                f"oracle position tolerance must be positive, got {self.position_tolerance}"
            )
        if self.scan_samples < 8:
            raise ValueError(f"oracle scan_samples must be >= 8, got {self.scan_samples}")


@dataclass(frozen=True)
class Scenario:
    name: str
    format_version: int
    field: UniformField | RiverField | JetField
    vehicle: VehicleSpec
    grid_origin: tuple[float, float]
    nx: int
    ny: int
    dx: float
    dy: float
    sectors: tuple[int, ...]
    obstacles: tuple[Obstacle, ...]
    start: tuple[float, float]
    goal: tuple[float, float]
    t0: float
    cost: CostConfig
    oracle: OracleConfig

    def grid_spec(self, sector: int) -> GridSpec:
        return GridSpec(origin=self.grid_origin, nx=self.nx, ny=self.ny,
                        dx=self.dx, dy=self.dy, sector=sector)

    def bounds(self) -> tuple[float, float, float, float]:
        x0, y0 = self.grid_origin
        return (x0, y0, x0 + (self.nx - 1) * self.dx, y0 + (self.ny - 1) * self.dy)

    def snap(self, p) -> tuple[tuple[int, int], tuple[float, float], float]:
        """Nearest lattice vertex to ``p``: its (i, j), position, distance."""
        x0, y0 = self.grid_origin
        i = min(self.nx - 1, max(0, round((p[0] - x0) / self.dx)))
        j = min(self.ny - 1, max(0, round((p[1] - y0) / self.dy)))
        pos = (x0 + i * self.dx, y0 + j * self.dy)
        return (i, j), pos, math.hypot(p[0] - pos[0], p[1] - pos[1])


def _require(table: dict, key: str, where: str):
    if key not in table:
        raise ScenarioError(f"missing required key '{where}.{key}'" if where else
                            f"missing required key '{key}'")
    return table[key]


def _reject_unknown(table: dict, allowed, where: str) -> None:
    unknown = set(table) - set(allowed)
    if unknown:
        name = sorted(unknown)[0]
        path = f"{where}.{name}" if where else name
        raise ScenarioError(f"unknown key '{path}'")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"'{where}' must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioError(f"'{where}' must be finite, got {value!r}")
    return float(value)


def _integer(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"'{where}' must be an integer, got {value!r}")
    return value


def _point(value, where: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ScenarioError(f"'{where}' must be a pair [x, y], got {value!r}")
    return (_number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]"))


def _build_field(table: dict):
    kind = _require(table, "kind", "field")
    if kind == "uniform":
        _reject_unknown(table, {"kind", "u", "v"}, "field")
        return UniformField(u0=_number(table.get("u", 0.0), "field.u"),
                            v0=_number(table.get("v", 0.0), "field.v"))
    if kind == "river":
        _reject_unknown(table, {"kind", "width", "peak_speed"}, "field")
        return RiverField(width=_number(_require(table, "width", "field"), "field.width"),
                          peak_speed=_number(_require(table, "peak_speed", "field"),
                                             "field.peak_speed"))
    if kind == "jet":
        allowed = {"kind", "mean_amplitude", "oscillation_amplitude", "oscillation_frequency",
                   "phase", "wavenumber", "phase_speed", "fd_step"}
        _reject_unknown(table, allowed, "field")
        kwargs = {}
        for key in sorted(allowed - {"kind"}):
            if key in table:
                kwargs[key] = _number(table[key], f"field.{key}")
        return JetField(**kwargs)
    raise ScenarioError(f"'field.kind' must be one of uniform, river, jet; got {kind!r}")


def _build_obstacle(table: dict, where: str) -> Obstacle:
    kind = _require(table, "kind", where)
    try:
        if kind == "circle":
            _reject_unknown(table, {"kind", "center", "radius"}, where)
            return Circle(center=_point(_require(table, "center", where), f"{where}.center"),
                          radius=_number(_require(table, "radius", where), f"{where}.radius"))
        if kind == "rect":
            _reject_unknown(table, {"kind", "min", "max"}, where)
            return Rect(low=_point(_require(table, "min", where), f"{where}.min"),
                        high=_point(_require(table, "max", where), f"{where}.max"))
        if kind == "polygon":
            _reject_unknown(table, {"kind", "vertices"}, where)
            raw = _require(table, "vertices", where)
            if not isinstance(raw, list) or len(raw) < 3:
                raise ScenarioError(f"'{where}.vertices' must list at least 3 points")
            return ConvexPolygon(vertices=tuple(
                _point(p, f"{where}.vertices[{k}]") for k, p in enumerate(raw)
            ))
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"invalid obstacle at '{where}': {exc}") from exc
    raise ScenarioError(f"'{where}.kind' must be one of circle, rect, polygon; got {kind!r}")


def load_scenario(path) -> Scenario:
    """Load and fully validate a scenario file."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioError(f"{path}: parse error: {exc}") from exc
    return scenario_from_mapping(data, name_default=path.stem)


def scenario_from_mapping(data: dict, name_default: str = "scenario") -> Scenario:
    _reject_unknown(data, {"format_version", "name", "field", "vehicle", "grid", "route",
                           "cost", "oracle", "obstacles"}, "")
    version = _integer(_require(data, "format_version", ""), "format_version")
    if version != FORMAT_VERSION:
        raise ScenarioError(f"unsupported format_version {version}; this build reads "
                            f"{FORMAT_VERSION}")
    name = data.get("name", name_default)
    if not isinstance(name, str):
        raise ScenarioError(f"'name' must be a string, got {name!r}")

    field = _build_field(_require(data, "field", ""))

    vehicle_tbl = _require(data, "vehicle", "")
    _reject_unknown(vehicle_tbl, {"speed_through_water"}, "vehicle")
    try:
        vehicle = VehicleSpec(_number(_require(vehicle_tbl, "speed_through_water", "vehicle"),
                                      "vehicle.speed_through_water"))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc

    grid_tbl = _require(data, "grid", "")
    _reject_unknown(grid_tbl, {"origin", "nx", "ny", "dx", "dy", "sectors"}, "grid")
    origin = _point(_require(grid_tbl, "origin", "grid"), "grid.origin")
    nx = _integer(_require(grid_tbl, "nx", "grid"), "grid.nx")
    ny = _integer(_require(grid_tbl, "ny", "grid"), "grid.ny")
    dx = _number(_require(grid_tbl, "dx", "grid"), "grid.dx")
    dy = _number(_require(grid_tbl, "dy", "grid"), "grid.dy")
    sectors_raw = _require(grid_tbl, "sectors", "grid")
    if not isinstance(sectors_raw, list) or not sectors_raw:
        raise ScenarioError("'grid.sectors' must be a non-empty list of sector counts")
    sectors = tuple(_integer(s, f"grid.sectors[{k}]") for k, s in enumerate(sectors_raw))

    obstacles = tuple(
        _build_obstacle(tbl, f"obstacles[{k}]")
        for k, tbl in enumerate(data.get("obstacles", []))
    )

    route_tbl = _require(data, "route", "")
    _reject_unknown(route_tbl, {"start", "goal", "t0"}, "route")
    start = _point(_require(route_tbl, "start", "route"), "route.start")
    goal = _point(_require(route_tbl, "goal", "route"), "route.goal")
    t0 = _number(route_tbl.get("t0", 0.0), "route.t0")

    cost_tbl = data.get("cost", {})
    _reject_unknown(cost_tbl, {"large_weight", "substeps", "sampling"}, "cost")
    sampling = cost_tbl.get("sampling", "midpoint")
    if sampling not in SAMPLING_MODES:
        raise ScenarioError(f"'cost.sampling' must be one of {SAMPLING_MODES}, got {sampling!r}")
    try:
        cost = CostConfig(
            large_weight=_number(cost_tbl.get("large_weight", 1e9), "cost.large_weight"),
            substeps=_integer(cost_tbl.get("substeps", 1), "cost.substeps"),
            sampling=sampling,
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc

    span = math.hypot(goal[0] - start[0], goal[1] - start[1])
    crossing_time = span / vehicle.speed_through_water if span > 0 else 1.0
    oracle_tbl = data.get("oracle", {})
    _reject_unknown(oracle_tbl, {"dt", "horizon", "position_tolerance", "scan_samples",
                                 "heading_tolerance", "direct_drive_step"}, "oracle")
    dd_step = oracle_tbl.get("direct_drive_step")
    try:
        oracle = OracleConfig(
            dt=_number(oracle_tbl.get("dt", crossing_time / 2000.0), "oracle.dt"),
            horizon=_number(oracle_tbl.get("horizon", 3.0 * crossing_time), "oracle.horizon"),
            position_tolerance=_number(
                oracle_tbl.get("position_tolerance", 0.25 * min(dx, dy) if min(dx, dy) > 0 else 1.0),
                "oracle.position_tolerance"),
            scan_samples=_integer(oracle_tbl.get("scan_samples", 720), "oracle.scan_samples"),
            heading_tolerance=_number(oracle_tbl.get("heading_tolerance", 2e-4),
                                      "oracle.heading_tolerance"),
            direct_drive_step=None if dd_step is None else _number(dd_step,
                                                                   "oracle.direct_drive_step"),
        )
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc

    try:
        scenario = Scenario(
            name=name, format_version=version, field=field, vehicle=vehicle,
            grid_origin=origin, nx=nx, ny=ny, dx=dx, dy=dy, sectors=sectors,
            obstacles=obstacles, start=start, goal=goal, t0=t0, cost=cost, oracle=oracle,
        )
        scenario.grid_spec(sectors[0])  # validates the lattice geometry
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(str(exc)) from exc

    x_min, y_min, x_max, y_max = scenario.bounds()
    for label, p in (("route.start", start), ("route.goal", goal)):
        if not (x_min <= p[0] <= x_max and y_min <= p[1] <= y_max):
            raise ScenarioError(
                f"'{label}' {p} lies outside the grid bounds "
                f"[{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )
        if point_blocked(p, obstacles):
            raise ScenarioError(f"'{label}' {p} lies inside an obstacle")
        _, snapped, _ = scenario.snap(p)
        if point_blocked(snapped, obstacles):
            raise ScenarioError(
                f"'{label}' {p} snaps to lattice vertex {snapped}, which lies inside an obstacle"
            )
    return scenario


def bundled_scenario_path(name: str) -> Path:
    """Path to a scenario shipped with the package (e.g. 'river', 'jet')."""
    base = resources.files("flowplan") / "scenarios" / f"{name}.scenario"
    with resources.as_file(base) as concrete:
        if not concrete.exists():
            raise ScenarioError(f"no bundled scenario named {name!r}")
        return concrete
