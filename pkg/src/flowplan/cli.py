"""Command-line front end.

Subcommands::

    flowplan grid-stats <scenario>            vertex/edge counts per variant
    flowplan plan <scenario> [--out DIR] [--format csv|json]
                                              searches only, route export
    flowplan compare <scenario> [--out DIR] [--format csv|json]
                                              searches plus both oracles
    flowplan oracle <scenario> [--out DIR]    oracles only, trajectory CSV

Exit codes: 0 on success, 2 when no grid variant has a feasible route,
1 on any other error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from .grid import GridError, build_grid
from .oracles import OracleError, direct_drive, solve_optimal
from .planner import CompareReport, export, report_rows, run_compare
from .scenario import ScenarioError, load_scenario
from .search import SearchLimitError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_PATH = 2


def _print_table(rows: list[dict[str, str]], columns) -> None:
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) if rows else len(c) for c in columns}
    print("  ".join(c.ljust(widths[c]) for c in columns))
    for r in rows:
        print("  ".join(r[c].ljust(widths[c]) for c in columns))


def _print_report(report: CompareReport) -> None:
    print(f"scenario: {report.scenario}   t0={report.t0:g}")
    for name, info in (("start", report.start), ("goal", report.goal)):
        if info.snap_distance > 0:
            print(f"{name}: requested {info.requested} snapped to {info.snapped} "
                  f"(distance {info.snap_distance:.6g})")
    _print_table(report_rows(report), ("variant", "time", "vertices", "edges",
                                       "saving_pct", "deviation_pct"))
    for v in report.variants:
        if v.error is not None:
            print(f"{v.label}: {v.error}")
        elif v.stats is not None and v.stats.reexpansions:
            print(f"{v.label}: {v.stats.reexpansions} re-expansions during search")
    if report.oracle is not None and report.oracle.error is not None:
        print(f"optimal-control: {report.oracle.error}")


def _export_report(report: CompareReport, args) -> None:
    if args.out is None:
        return
    out_dir = Path(args.out)
    files = export(report, args.format, out_dir / f"report.{args.format}")
    for f in files:
        print(f"wrote {f}")


def _cmd_grid_stats(args) -> int:
    scenario = load_scenario(args.scenario)
    rows = []
    for sector in scenario.sectors:
        graph = build_grid(scenario.grid_spec(sector), scenario.obstacles)
        rows.append({"variant": f"sector-{sector}", "vertices": str(graph.n_vertices),
                     "edges": str(graph.edge_count)})
    print(f"scenario: {scenario.name}   grid {scenario.nx} x {scenario.ny}")
    _print_table(rows, ("variant", "vertices", "edges"))
    return EXIT_OK


def _run_and_report(args, include_oracles: bool) -> int:
    scenario = load_scenario(args.scenario)
    report = run_compare(scenario, include_oracles=include_oracles)
    _print_report(report)
    _export_report(report, args)
    return EXIT_OK if report.any_feasible() else EXIT_NO_PATH


def _cmd_plan(args) -> int:
    return _run_and_report(args, include_oracles=False)


def _cmd_compare(args) -> int:
    return _run_and_report(args, include_oracles=True)


def _cmd_oracle(args) -> int:
    scenario = load_scenario(args.scenario)
    cfg = scenario.oracle
    start = scenario.snap(scenario.start)[1]
    goal = scenario.snap(scenario.goal)[1]
    dd = direct_drive(scenario.field, scenario.vehicle, start, goal, scenario.t0,
                      step=cfg.direct_drive_step)
    print(f"direct-drive: {f'{dd:.2f}' if math.isfinite(dd) else 'inf'}")
    arrival, trajectory = solve_optimal(
        scenario.field, scenario.vehicle, start, goal, scenario.t0,
        dt=cfg.dt, horizon=cfg.horizon, position_tolerance=cfg.position_tolerance,
        scan_samples=cfg.scan_samples, heading_tolerance=cfg.heading_tolerance,
    )
    print(f"optimal-control: {arrival - scenario.t0:.2f} "
          f"(miss {trajectory.miss_distance:.6g})")
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "optimal-trajectory.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("t", "x", "y", "heading"))
            for k in range(len(trajectory.times)):
                writer.writerow((repr(float(trajectory.times[k])),
                                 repr(float(trajectory.xs[k])),
                                 repr(float(trajectory.ys[k])),
                                 repr(float(trajectory.headings[k]))))
        print(f"wrote {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flowplan",
                                     description="Time-optimal route planning through "
                                                 "time-varying current fields")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_options(p):
        p.add_argument("--out", metavar="DIR", default=None,
                       help="directory for report and route exports")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="report export format (default csv)")

    p = sub.add_parser("grid-stats", help="print vertex/edge counts per grid variant")
    p.add_argument("scenario", help="scenario file")
    p.set_defaults(handler=_cmd_grid_stats)

    p = sub.add_parser("plan", help="search every grid variant and export routes")
    p.add_argument("scenario", help="scenario file")
    add_output_options(p)
    p.set_defaults(handler=_cmd_plan)

    p = sub.add_parser("compare", help="searches plus oracle baselines and percentages")
    p.add_argument("scenario", help="scenario file")
    add_output_options(p)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("oracle", help="run only the trajectory oracles")
    p.add_argument("scenario", help="scenario file")
    p.add_argument("--out", metavar="DIR", default=None,
                   help="directory for the optimal trajectory CSV")
    p.set_defaults(handler=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ScenarioError, GridError, OracleError, SearchLimitError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
