"""Trajectory oracles that score graph routes.

Two independent references bracket a graph route's quality:

* ``solve_optimal`` -- a time-optimal trajectory found by shooting: the
  vehicle's position and heading follow the classical steering law for
  time-optimal motion through a current (Zermelo's condition), where the
  heading rate is driven by the current's spatial gradient.  A dense scan
  over the initial heading, an adaptive zoom into the promising brackets,
  and golden-section refinement of the arrival time pick the extremal
  that actually passes through the goal earliest.
* ``direct_drive`` -- the naive baseline that follows the straight
  start-goal segment with crab compensation, or reports an infinite
  duration when the current overpowers the vehicle anywhere on it.

``score`` turns a route's duration plus these two references into the
percentage columns of a comparison report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .cost import VehicleSpec, effective_speed
from .fields import DEFAULT_FD_STEP, FlowField, velocity_and_jacobian

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class OracleError(RuntimeError):
    """The heading scan could not connect start to goal within tolerance."""


class OracleState(NamedTuple):
    """Vehicle position and world-frame heading (radians, in (-pi, pi])."""

    x: float
    y: float
    heading: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Integrator samples up to the closest approach to the goal.

    ``miss_distance`` and ``arrival_time`` are parabolically refined
    between samples, so they can differ slightly from the last sample.
    ``hit_horizon`` flags a trajectory still approaching the goal when the
    integration horizon ran out.
    """

    times: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    headings: np.ndarray
    miss_distance: float
    arrival_time: float
    hit_horizon: bool


def zermelo_rhs(state, t, field: FlowField, vehicle: VehicleSpec,
                fd_step: float = DEFAULT_FD_STEP):
    """Time derivative (dx, dy, dheading) of position and optimal heading.

    Position advances with the current plus the vehicle speed along the
    heading; the heading turns with the current's spatial gradient,
    estimated by central differences.  Accepts scalars or batched arrays.
    """
    x, y, heading = state
    u, v, u_x, u_y, v_x, v_y = velocity_and_jacobian(field, x, y, t, fd_step)
    c = np.cos(heading)
    s = np.sin(heading)
    speed = vehicle.speed_through_water
    return (
        u + speed * c,
        v + speed * s,
        -u_y * c * c + (u_x - v_y) * c * s + v_x * s * s,
    )


def _wrap_heading(h):
    """Map headings into (-pi, pi]."""
    w = np.mod(np.asarray(h, dtype=np.float64) + np.pi, 2.0 * np.pi)
    return np.where(w == 0.0, np.pi, w - np.pi)


class _Approach(NamedTuple):
    miss: np.ndarray
    arrival: np.ndarray
    index: np.ndarray
    hit_horizon: np.ndarray


def _integrate(field, vehicle, start, goal, headings, t0, dt, horizon, record=False):
    """RK4-march a batch of initial headings; track each lane's closest
    approach to the goal, refined parabolically between samples."""
    phi = _wrap_heading(np.atleast_1d(np.asarray(headings, dtype=np.float64)))
    m = phi.shape[0]
    steps = max(1, int(math.ceil(horizon / dt - 1e-12)))
    x = np.full(m, float(start[0]))
    y = np.full(m, float(start[1]))
    gx, gy = float(goal[0]), float(goal[1])

    d2 = np.empty((steps + 1, m))
    d2[0] = (x - gx) ** 2 + (y - gy) ** 2
    if record:
        xs = np.empty((steps + 1, m))
        ys = np.empty((steps + 1, m))
        phis = np.empty((steps + 1, m))
        xs[0], ys[0], phis[0] = x, y, phi

    half = 0.5 * dt
    sixth = dt / 6.0
    for k in range(steps):
        t = t0 + k * dt
        ax, ay, ah = zermelo_rhs((x, y, phi), t, field, vehicle)
        bx, by, bh = zermelo_rhs((x + half * ax, y + half * ay, phi + half * ah),
                                 t + half, field, vehicle)
        cx, cy, ch = zermelo_rhs((x + half * bx, y + half * by, phi + half * bh),
                                 t + half, field, vehicle)
        ex, ey, eh = zermelo_rhs((x + dt * cx, y + dt * cy, phi + dt * ch),
                                 t + dt, field, vehicle)
        x = x + sixth * (ax + 2.0 * (bx + cx) + ex)
        y = y + sixth * (ay + 2.0 * (by + cy) + ey)
        phi = _wrap_heading(phi + sixth * (ah + 2.0 * (bh + ch) + eh))
        d2[k + 1] = (x - gx) ** 2 + (y - gy) ** 2
        if record:
            xs[k + 1], ys[k + 1], phis[k + 1] = x, y, phi

    lanes = np.arange(m)
    idx = np.argmin(d2, axis=0)
    f0 = d2[idx, lanes]
    fm = d2[np.maximum(idx - 1, 0), lanes]
    fp = d2[np.minimum(idx + 1, steps), lanes]
    denom = fm - 2.0 * f0 + fp
    interior = (idx > 0) & (idx < steps) & (denom > 0.0)
    safe = np.where(denom == 0.0, 1.0, denom)
    delta = np.where(interior, np.clip(0.5 * (fm - fp) / safe, -1.0, 1.0), 0.0)
    refined = np.where(interior, f0 - 0.125 * (fp - fm) ** 2 / safe, f0)
    info = _Approach(
        miss=np.sqrt(np.maximum(refined, 0.0)),
        arrival=t0 + (idx + delta) * dt,
        index=idx,
        hit_horizon=idx == steps,
    )
    if not record:
        return info, None
    times = t0 + dt * np.arange(steps + 1)
    return info, (times, xs, ys, phis)


def shoot(field: FlowField, vehicle: VehicleSpec, start, goal, t0: float,
          heading0: float, dt: float, horizon: float) -> Trajectory:
    """Integrate one trial heading; stop reporting at the closest approach.

    Running out of horizon while still approaching the goal is not an
    error -- it is reported through ``hit_horizon``.
    """
    if not dt > 0:
        raise ValueError(f"integration step must be positive, got {dt}")
    info, samples = _integrate(field, vehicle, start, goal, [heading0], t0, dt, horizon,
                               record=True)
    times, xs, ys, phis = samples
    end = int(info.index[0]) + 1
    return Trajectory(
        times=times[:end].copy(),
        xs=xs[:end, 0].copy(),
        ys=ys[:end, 0].copy(),
        headings=phis[:end, 0].copy(),
        miss_distance=float(info.miss[0]),
        arrival_time=float(info.arrival[0]),
        hit_horizon=bool(info.hit_horizon[0]),
    )


def _golden_refine(objective: Callable[[np.ndarray], np.ndarray], a: np.ndarray,
                   b: np.ndarray, tol: float) -> np.ndarray:
    """Lockstep golden-section minimization over a batch of brackets."""
    a = a.astype(np.float64).copy()
    b = b.astype(np.float64).copy()
    width = float(np.max(b - a))
    if width <= tol:
        return 0.5 * (a + b)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1 = objective(x1)
    f2 = objective(x2)
    iterations = int(math.ceil(math.log(tol / width) / math.log(_GOLDEN)))
    for _ in range(iterations):
        take_left = f1 < f2
        b = np.where(take_left, x2, b)
        a = np.where(take_left, a, x1)
        old_x1, old_x2 = x1, x2
        x1 = np.where(take_left, b - _GOLDEN * (b - a), old_x2)
        x2 = np.where(take_left, old_x1, a + _GOLDEN * (b - a))
        probes = np.where(take_left, x1, x2)
        fp = objective(probes)
        f1, f2 = np.where(take_left, fp, f2), np.where(take_left, f1, fp)
    return 0.5 * (a + b)


def solve_optimal(field: FlowField, vehicle: VehicleSpec, start, goal, t0: float, *,
                  dt: float, horizon: float, position_tolerance: float,
                  scan_samples: int = 720, heading_tolerance: float = 2e-4,
                  max_candidates: int = 8, zoom_points: int = 33,
                  max_zoom_rounds: int = 6) -> tuple[float, Trajectory]:
    """Earliest arrival at ``goal`` over all initial headings.

    Three phases:

    1. Coarse scan of ``scan_samples`` headings across (-pi, pi]; the
       cyclic local minima of the miss distance mark candidate brackets.
    2. Adaptive bracket zoom: each candidate bracket is re-scanned with
       ``zoom_points`` trial headings and narrowed around its best probe,
       until some candidate's miss is well inside ``position_tolerance``
       or the round budget runs out.  Strong shear stretches the
       heading-to-endpoint map by orders of magnitude, which squeezes the
       goal-hitting dip far below any affordable uniform scan spacing;
       zooming recovers it at geometric cost.
    3. Golden-section refinement of the arrival time (with a miss
       penalty) inside each surviving bracket, then the earliest refined
       candidate whose miss is within ``position_tolerance`` wins.

    Bracket selection (phases 1 and 2) may run on a coarser triage step;
    every number that leaves this function is integrated at ``dt``.
    Raises ``OracleError`` when no heading connects.
    """
    if not dt > 0:
        raise ValueError(f"integration step must be positive, got {dt}")
    step_h = 2.0 * math.pi / scan_samples
    headings = -math.pi + step_h * np.arange(1, scan_samples + 1)
    penalty = 4.0 / vehicle.speed_through_water
    dt_triage = max(dt, horizon / 2000.0)

    info, _ = _integrate(field, vehicle, start, goal, headings, t0, dt_triage, horizon)
    miss = info.miss
    is_min = (miss <= np.roll(miss, 1)) & (miss <= np.roll(miss, -1))
    candidates = np.nonzero(is_min)[0]
    objective_scan = info.arrival + penalty * miss
    candidates = candidates[np.argsort(objective_scan[candidates], kind="stable")]
    candidates = candidates[:max_candidates]

    centers = headings[candidates]
    spacing = np.full(centers.shape, step_h)
    best_miss = miss[candidates]
    best_arrival = info.arrival[candidates]
    offsets = np.linspace(-1.0, 1.0, zoom_points)

    def trimmed_horizon(pad_dt: float) -> float:
        # Candidate arrivals bound how much horizon refinement can need.
        return min(horizon, 1.3 * (float(np.max(best_arrival)) - t0) + 20.0 * pad_dt)

    for _ in range(max_zoom_rounds):
        if float(np.min(best_miss)) <= 0.25 * position_tolerance:
            break
        probes = (centers[:, None] + spacing[:, None] * offsets[None, :]).ravel()
        probe_info, _ = _integrate(field, vehicle, start, goal, probes, t0, dt_triage,
                                   trimmed_horizon(dt_triage))
        k = centers.shape[0]
        probe_miss = probe_info.miss.reshape(k, zoom_points)
        probe_arrival = probe_info.arrival.reshape(k, zoom_points)
        pick = np.argmin(probe_miss, axis=1)
        lanes = np.arange(k)
        centers = probes.reshape(k, zoom_points)[lanes, pick]
        best_miss = probe_miss[lanes, pick]
        best_arrival = probe_arrival[lanes, pick]
        spacing = spacing * (2.0 / (zoom_points - 1))

    horizon_final = trimmed_horizon(dt)

    def objective(h: np.ndarray) -> np.ndarray:
        probe, _ = _integrate(field, vehicle, start, goal, h, t0, dt, horizon_final)
        return probe.arrival + penalty * probe.miss

    best = _golden_refine(objective, centers - spacing, centers + spacing, heading_tolerance)
    final, _ = _integrate(field, vehicle, start, goal, best, t0, dt, horizon_final)
    ok = final.miss <= position_tolerance
    if not ok.any():
        raise OracleError(
            f"failed to connect: best refined miss {float(final.miss.min()):.6g} exceeds "
            f"position tolerance {position_tolerance:.6g}"
        )
    feasible = np.nonzero(ok)[0]
    lane = int(feasible[np.argmin(final.arrival[feasible])])
    trajectory = shoot(field, vehicle, start, goal, t0, float(best[lane]), dt, horizon_final)
    return trajectory.arrival_time, trajectory


def direct_drive(field: FlowField, vehicle: VehicleSpec, start, goal, t0: float,
                 step: float | None = None) -> float:
    """Duration of following the straight start-goal segment with crabbing.

    Marches along the segment sampling the current at the vehicle's
    current position and time; returns ``math.inf`` as soon as any point
    yields no holdable ground speed.  ``step`` is the spatial march length
    (default: span / 4096).
    """
    sx, sy = float(start[0]), float(start[1])
    ex, ey = float(goal[0]) - sx, float(goal[1]) - sy
    span = math.hypot(ex, ey)
    if span == 0.0:
        return 0.0
    if step is None:
        step = span / 4096.0
    if not step > 0:
        raise ValueError(f"march step must be positive, got {step}")
    n = max(1, int(math.ceil(span / step)))
    ds = span / n
    direction = (ex / span, ey / span)
    t = t0
    for k in range(n):
        px = sx + k * ds * direction[0]
        py = sy + k * ds * direction[1]
        u, v = field.velocity(px, py, t)
        speed = effective_speed(vehicle, (float(u), float(v)), direction)
        if speed is None:
            return math.inf
        t += ds / speed
    return t - t0


def score(t_path: float, t_direct: float | None, t_optimal: float):
    """Percentage columns: (saving vs direct drive, deviation above optimal).

    The saving is undefined (None) when direct drive is infeasible.
    """
    saving = None
    if t_direct is not None and math.isfinite(t_direct):
        saving = 100.0 * (t_direct - t_path) / t_direct
    deviation = 100.0 * (t_path - t_optimal) / t_optimal
    return saving, deviation
