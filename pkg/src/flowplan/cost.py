"""Edge traversal times for a vehicle crabbing through a current.

The vehicle holds a constant speed through the water.  To track a straight
edge it must point part of that speed into the cross-current; what is left
over, plus the along-edge current component, is its ground speed.  When
the cross-current alone meets or exceeds the vehicle speed, or the
along-edge component pushes the net ground speed to zero or below, the
edge cannot be held at all; such edges receive a large finite penalty
weight instead of being deleted, which keeps the graph static while the
search avoids them, and stays correct when feasibility changes with time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import FlowField
from .grid import Graph

SAMPLING_MODES = ("midpoint", "substep-resampled")


@dataclass(frozen=True)
class VehicleSpec:
    """Cruising speed through the water, constant per scenario."""

    speed_through_water: float

    def __post_init__(self) -> None:
        if not self.speed_through_water > 0:
            raise ValueError(f"vehicle speed must be positive, got {self.speed_through_water}")


@dataclass(frozen=True)
class CostConfig:
    """Knobs for edge-time evaluation.

    ``large_weight`` is the penalty duration for edges the vehicle cannot
    hold; it must dwarf any plausible mission horizon so penalized edges
    lose to every feasible route.  ``sampling`` picks between one current
    sample at the edge midpoint at departure time (default; adequate while
    an edge takes far less time than the field needs to change) and
    ``substep-resampled``, which splits the edge into ``substeps`` pieces
    and samples each piece at its own accumulated arrival time.
    """

    large_weight: float = 1e9
    substeps: int = 1
    sampling: str = "midpoint"

    def __post_init__(self) -> None:
        if not (self.large_weight > 0 and math.isfinite(self.large_weight)):
            raise ValueError(f"large_weight must be positive and finite, got {self.large_weight}")
        if self.substeps < 1:
            raise ValueError(f"substeps must be >= 1, got {self.substeps}")
        if self.sampling not in SAMPLING_MODES:
            raise ValueError(f"sampling must be one of {SAMPLING_MODES}, got {self.sampling!r}")


def effective_speed(vehicle: VehicleSpec, current, direction) -> float | None:
    """Ground speed along a unit ``direction`` while crabbing, or None.

    Decomposes ``current`` into along-path and cross components; the
    vehicle cancels the cross component and the remainder of its speed
    budget advances along the path.  Returns None when the vehicle cannot
    hold the path: the cross-current consumes the whole speed budget, or
    the net ground speed is not positive.
    """
    ux, uy = float(direction[0]), float(direction[1])
    if abs(math.hypot(ux, uy) - 1.0) > 1e-9:
        raise ValueError(f"direction must be a unit vector, got ({ux}, {uy})")
    cu, cv = float(current[0]), float(current[1])
    along = cu * ux + cv * uy
    cross_sq = cu * cu + cv * cv - along * along
    margin = vehicle.speed_through_water * vehicle.speed_through_water - cross_sq
    if margin <= 0.0:
        return None
    ground = along + math.sqrt(margin)
    if ground <= 0.0:
        return None
    return ground


def segment_travel_time(start, direction, length, t_depart, field, vehicle, cfg) -> float:
    """Travel time along a straight segment departing at ``t_depart``.

    ``start`` is the segment's first endpoint, ``direction`` its unit
    vector and ``length`` its geometric length.  Any stretch the vehicle
    cannot hold makes the whole segment cost ``cfg.large_weight``.
    """
    x0, y0 = start
    if cfg.sampling == "midpoint":
        half = 0.5 * length
        u, v = field.velocity(x0 + half * direction[0], y0 + half * direction[1], t_depart)
        speed = effective_speed(vehicle, (float(u), float(v)), direction)
        return cfg.large_weight if speed is None else length / speed
    piece = length / cfg.substeps
    t = t_depart
    for k in range(cfg.substeps):
        d = (k + 0.5) * piece
        u, v = field.velocity(x0 + d * direction[0], y0 + d * direction[1], t)
        speed = effective_speed(vehicle, (float(u), float(v)), direction)
        if speed is None:
            return cfg.large_weight
        t += piece / speed
    return t - t_depart


def edge_travel_time(p_from, p_to, t_depart, field: FlowField, vehicle: VehicleSpec,
                     cfg: CostConfig = CostConfig()) -> float:
    """Travel time from ``p_from`` to ``p_to`` departing at ``t_depart``."""
    ex = float(p_to[0]) - float(p_from[0])
    ey = float(p_to[1]) - float(p_from[1])
    length = math.hypot(ex, ey)
    if length == 0.0:
        raise ValueError("degenerate edge: endpoints coincide")
    direction = (ex / length, ey / length)
    return segment_travel_time(
        (float(p_from[0]), float(p_from[1])), direction, length, t_depart, field, vehicle, cfg
    )


def graph_edge_cost(graph: Graph, field: FlowField, vehicle: VehicleSpec, cfg: CostConfig):
    """Edge-cost callback ``(u, edge, t_depart) -> duration`` for the searches."""
    positions = graph.positions

    def cost(u, edge, t_depart):
        return segment_travel_time(
            positions[u], (edge.ux, edge.uy), edge.length, t_depart, field, vehicle, cfg
        )

    return cost


def precompute_edge_weights(graph: Graph, field: FlowField, vehicle: VehicleSpec,
                            cfg: CostConfig, t: float = 0.0) -> list[list[float]]:
    """Fixed per-edge weights, evaluated at one departure time.

    Aligned with ``graph.adjacency``.  Exact for time-invariant fields;
    for time-varying ones this freezes the field at ``t``.
    """
    cost = graph_edge_cost(graph, field, vehicle, cfg)
    return [[cost(u, e, t) for e in row] for u, row in enumerate(graph.adjacency)]
