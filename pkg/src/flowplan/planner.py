"""Batch comparison runs and their reports.

``run_compare`` executes one scenario end to end: build each grid
variant, search it, extract the route, and (optionally) run the two
trajectory oracles once, filling the percentage columns.  A variant that
has no feasible route is recorded as such without aborting the others.
Everything is deterministic: the same scenario file produces
byte-identical exports.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .cost import graph_edge_cost, precompute_edge_weights
from .grid import build_grid
from .oracles import OracleError, direct_drive, score, solve_optimal
from .scenario import Scenario
from .search import (NoFeasiblePathError, SearchStats, dijkstra, extract_path,
                     time_dependent_search)

REPORT_COLUMNS = ("variant", "time", "vertices", "edges", "saving_pct", "deviation_pct")


@dataclass
class PathPoint:
    """One route vertex with its arrival time."""

    x: float
    y: float
    t: float


@dataclass
class EndpointInfo:
    """Requested endpoint and the lattice vertex it snapped to."""

    requested: tuple[float, float]
    snapped: tuple[float, float]
    lattice: tuple[int, int]
    snap_distance: float


@dataclass
class VariantResult:
    label: str
    sector: int
    vertices: int
    edges: int
    duration: float | None
    saving_pct: float | None
    deviation_pct: float | None
    path: list[PathPoint] | None
    path_vertices: list[int] | None
    stats: SearchStats | None
    error: str | None = None


@dataclass
class OracleResult:
    direct_drive_duration: float | None  # None: the straight segment cannot be held
    optimal_duration: float | None
    error: str | None = None


@dataclass
class CompareReport:
    scenario: str
    format_version: int
    t0: float
    start: EndpointInfo
    goal: EndpointInfo
    variants: list[VariantResult] = field(default_factory=list)
    oracle: OracleResult | None = None

    def any_feasible(self) -> bool:
        return any(v.duration is not None for v in self.variants)


def _endpoint_info(scenario: Scenario, p) -> EndpointInfo:
    lattice, snapped, dist = scenario.snap(p)
    return EndpointInfo(requested=(float(p[0]), float(p[1])), snapped=snapped,
                        lattice=lattice, snap_distance=dist)


def run_compare(scenario: Scenario, include_oracles: bool = True) -> CompareReport:
    """Run every grid variant of ``scenario`` and assemble the report.

    Variants are processed in declaration order.  For time-invariant
    fields each variant is searched both ways -- precomputed weights and
    on-the-fly costs -- and the two are cross-checked before reporting.
    """
    start = _endpoint_info(scenario, scenario.start)
    goal = _endpoint_info(scenario, scenario.goal)
    report = CompareReport(scenario=scenario.name, format_version=scenario.format_version,
                           t0=scenario.t0, start=start, goal=goal)

    oracle_result = None
    if include_oracles:
        oracle_result = _run_oracles(scenario, start.snapped, goal.snapped)
        report.oracle = oracle_result

    for sector in scenario.sectors:
        report.variants.append(
            _run_variant(scenario, sector, start.lattice, goal.lattice, oracle_result)
        )
    return report


def _run_oracles(scenario: Scenario, start, goal) -> OracleResult:
    cfg = scenario.oracle
    dd = direct_drive(scenario.field, scenario.vehicle, start, goal, scenario.t0,
                      step=cfg.direct_drive_step)
    try:
        arrival, _ = solve_optimal(
            scenario.field, scenario.vehicle, start, goal, scenario.t0,
            dt=cfg.dt, horizon=cfg.horizon, position_tolerance=cfg.position_tolerance,
            scan_samples=cfg.scan_samples, heading_tolerance=cfg.heading_tolerance,
        )
        optimal = arrival - scenario.t0
        error = None
    except OracleError as exc:
        optimal = None
        error = str(exc)
    return OracleResult(
        direct_drive_duration=None if math.isinf(dd) else dd,
        optimal_duration=optimal,
        error=error,
    )


def _run_variant(scenario: Scenario, sector: int, start_ij, goal_ij,
                 oracle: OracleResult | None) -> VariantResult:
    label = f"sector-{sector}"
    graph = build_grid(scenario.grid_spec(sector), scenario.obstacles)
    base = VariantResult(label=label, sector=sector, vertices=graph.n_vertices,
                         edges=graph.edge_count, duration=None, saving_pct=None,
                         deviation_pct=None, path=None, path_vertices=None, stats=None)

    source = graph.vertex_at(*start_ij)
    target = graph.vertex_at(*goal_ij)
    if source is None or target is None:
        base.error = "start or goal vertex was removed by obstacle masking"
        return base

    cost_fn = graph_edge_cost(graph, scenario.field, scenario.vehicle, scenario.cost)
    result = time_dependent_search(graph, source, scenario.t0, cost_fn)
    base.stats = result.stats

    if not scenario.field.time_varying:
        # The two search routes must coincide on a frozen field.
        weights = precompute_edge_weights(graph, scenario.field, scenario.vehicle,
                                          scenario.cost, scenario.t0)
        fixed = dijkstra(graph, source, weights)
        worst = max(
            abs((fixed.d[v] + scenario.t0) - result.d[v])
            for v in range(graph.n_vertices)
            if math.isfinite(result.d[v])
        )
        if worst > 1e-9:
            raise RuntimeError(
                f"stationary-field cross-check failed on {label}: searches disagree by {worst}"
            )

    try:
        vertices = extract_path(result, source, target,
                                infeasible_threshold=scenario.cost.large_weight)
    except NoFeasiblePathError as exc:
        base.error = str(exc)
        return base

    base.duration = result.d[target] - scenario.t0
    base.path_vertices = vertices
    base.path = [
        PathPoint(x=graph.positions[v][0], y=graph.positions[v][1], t=result.d[v])
        for v in vertices
    ]
    if oracle is not None and oracle.optimal_duration is not None:
        saving, deviation = score(base.duration, oracle.direct_drive_duration,
                                  oracle.optimal_duration)
        base.saving_pct = saving
        base.deviation_pct = deviation
    return base


# ---------------------------------------------------------------------------
# Export

def _fmt(value, decimals: int = 2) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, float):
        return f"{value:.{decimals}f}"
    return str(value)


def report_rows(report: CompareReport) -> list[dict[str, str]]:
    """Comparison table rows, 2-decimal fixed precision, oracle rows last."""
    rows = []
    for v in report.variants:
        rows.append({
            "variant": v.label,
            "time": _fmt(v.duration),
            "vertices": str(v.vertices),
            "edges": str(v.edges),
            "saving_pct": _fmt(v.saving_pct),
            "deviation_pct": _fmt(v.deviation_pct),
        })
    if report.oracle is not None:
        dd = report.oracle.direct_drive_duration
        opt = report.oracle.optimal_duration
        dd_saving = dd_dev = opt_saving = opt_dev = None
        if opt is not None:
            if dd is not None:
                dd_saving, dd_dev = score(dd, dd, opt)
                opt_saving, opt_dev = score(opt, dd, opt)
            else:
                opt_saving, opt_dev = None, 0.0
        rows.append({
            "variant": "direct-drive",
            "time": "inf" if dd is None else _fmt(dd),
            "vertices": "",
            "edges": "",
            "saving_pct": _fmt(dd_saving),
            "deviation_pct": _fmt(dd_dev),
        })
        rows.append({
            "variant": "optimal-control",
            "time": _fmt(opt),
            "vertices": "",
            "edges": "",
            "saving_pct": _fmt(opt_saving),
            "deviation_pct": _fmt(opt_dev),
        })
    return rows


def export(report: CompareReport, fmt: str, out) -> list[Path]:
    """Write the report (and per-variant route polylines) to ``out``.

    ``fmt='csv'`` writes the comparison table to ``out`` plus one
    ``<stem>-path-<variant>.csv`` per feasible variant next to it.
    ``fmt='json'`` writes a single self-contained file that round-trips
    through ``load_report``.  Returns the list of files written.
    """
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        written = [out]
        with open(out, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(report_rows(report))
        for v in report.variants:
            if v.path is None:
                continue
            path_file = out.with_name(f"{out.stem}-path-{v.label}.csv")
            with open(path_file, "w", newline="") as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(("x", "y", "t_arrival"))
                for point in v.path:
                    writer.writerow((repr(point.x), repr(point.y), repr(point.t)))
            written.append(path_file)
        return written
    if fmt == "json":
        with open(out, "w") as fh:
            json.dump(report_to_dict(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return [out]
    raise ValueError(f"unknown export format {fmt!r}; expected 'csv' or 'json'")


def report_to_dict(report: CompareReport) -> dict:
    """Full-precision dict form of a report (the JSON schema)."""

    def endpoint(info: EndpointInfo) -> dict:
        return {
            "requested": list(info.requested),
            "snapped": list(info.snapped),
            "lattice": list(info.lattice),
            "snap_distance": info.snap_distance,
        }

    def variant(v: VariantResult) -> dict:
        return {
            "label": v.label,
            "sector": v.sector,
            "vertices": v.vertices,
            "edges": v.edges,
            "duration": v.duration,
            "saving_pct": v.saving_pct,
            "deviation_pct": v.deviation_pct,
            "path": None if v.path is None else [[p.x, p.y, p.t] for p in v.path],
            "path_vertices": v.path_vertices,
            "stats": None if v.stats is None else {
                "extractions": v.stats.extractions,
                "insertions": v.stats.insertions,
                "reexpansions": v.stats.reexpansions,
            },
            "error": v.error,
        }

    data = {
        "format_version": report.format_version,
        "scenario": report.scenario,
        "t0": report.t0,
        "start": endpoint(report.start),
        "goal": endpoint(report.goal),
        "variants": [variant(v) for v in report.variants],
        "oracle": None,
    }
    if report.oracle is not None:
        data["oracle"] = {
            "direct_drive_duration": report.oracle.direct_drive_duration,
            "optimal_duration": report.oracle.optimal_duration,
            "error": report.oracle.error,
        }
    return data


def report_from_dict(data: dict) -> CompareReport:
    def endpoint(d: dict) -> EndpointInfo:
        return EndpointInfo(
            requested=tuple(d["requested"]),
            snapped=tuple(d["snapped"]),
            lattice=tuple(d["lattice"]),
            snap_distance=d["snap_distance"],
        )

    def variant(d: dict) -> VariantResult:
        stats = None
        if d["stats"] is not None:
            stats = SearchStats(extractions=d["stats"]["extractions"],
                                insertions=d["stats"]["insertions"],
                                reexpansions=d["stats"]["reexpansions"])
        path = None
        if d["path"] is not None:
            path = [PathPoint(x=p[0], y=p[1], t=p[2]) for p in d["path"]]
        return VariantResult(
            label=d["label"], sector=d["sector"], vertices=d["vertices"], edges=d["edges"],
            duration=d["duration"], saving_pct=d["saving_pct"],
            deviation_pct=d["deviation_pct"], path=path, path_vertices=d["path_vertices"],
            stats=stats, error=d["error"],
        )

    oracle = None
    if data["oracle"] is not None:
        oracle = OracleResult(
            direct_drive_duration=data["oracle"]["direct_drive_duration"],
            optimal_duration=data["oracle"]["optimal_duration"],
            error=data["oracle"]["error"],
        )
    return CompareReport(
        scenario=data["scenario"],
        format_version=data["format_version"],
        t0=data["t0"],
        start=endpoint(data["start"]),
        goal=endpoint(data["goal"]),
        variants=[variant(v) for v in data["variants"]],
        oracle=oracle,
    )


def load_report(path) -> CompareReport:
    """Read back a JSON report written by ``export``."""
    with open(path) as fh:
        return report_from_dict(json.load(fh))
