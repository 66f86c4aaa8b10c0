"""Time-optimal route planning through time-varying current fields.

A lattice graph over the operating area carries directed edges in many
slopes; each edge's cost is the time a constant-water-speed vehicle needs
to hold it against the current.  A classic fixed-weight search handles
steady fields; a label-correcting variant evaluates each edge at its
actual departure time, which is what makes planning in a current that
changes during the mission work.  Trajectory oracles (optimal steering
by shooting, and a straight-drive baseline) score the graph routes.
"""

from .cost import (CostConfig, VehicleSpec, edge_travel_time, effective_speed,
                   graph_edge_cost, precompute_edge_weights, segment_travel_time)
from .fields import (DEFAULT_FD_STEP, FlowField, FlowJacobian, FlowVector, JetField,
                     RiverField, UniformField, jacobian, sample, velocity_and_jacobian)
from .grid import (Circle, ConvexPolygon, Edge, Graph, GridError, GridSpec, Obstacle,
                   Rect, build_grid, point_blocked, sector_offsets, segment_blocked)
from .oracles import (OracleError, OracleState, Trajectory, direct_drive, score, shoot,
                      solve_optimal, zermelo_rhs)
from .planner import (CompareReport, EndpointInfo, OracleResult, PathPoint, VariantResult,
                      export, load_report, report_rows, run_compare)
from .scenario import (FORMAT_VERSION, OracleConfig, Scenario, ScenarioError,
                       bundled_scenario_path, load_scenario, scenario_from_mapping)
from .search import (NoFeasiblePathError, SearchLimitError, SearchResult, SearchStats,
                     dijkstra, extract_path, relaxation_violations, time_dependent_search)

__version__ = "0.1.0"

__all__ = [
    "CompareReport", "CostConfig", "Circle", "ConvexPolygon", "DEFAULT_FD_STEP", "Edge",
    "EndpointInfo", "FORMAT_VERSION", "FlowField", "FlowJacobian", "FlowVector", "Graph",
    "GridError", "GridSpec", "JetField", "NoFeasiblePathError", "Obstacle", "OracleConfig",
    "OracleError", "OracleResult", "OracleState", "PathPoint", "Rect", "RiverField",
    "Scenario", "ScenarioError", "SearchLimitError", "SearchResult", "SearchStats",
    "Trajectory", "UniformField", "VariantResult", "VehicleSpec", "build_grid",
    "bundled_scenario_path", "direct_drive", "dijkstra", "edge_travel_time",
    "effective_speed", "export", "extract_path", "graph_edge_cost", "jacobian",
    "load_report", "load_scenario", "point_blocked", "precompute_edge_weights",
    "relaxation_violations", "report_rows", "run_compare", "sample",
    "scenario_from_mapping", "score", "sector_offsets", "segment_blocked",
    "segment_travel_time", "shoot", "solve_optimal", "time_dependent_search",
    "velocity_and_jacobian", "zermelo_rhs",
]
