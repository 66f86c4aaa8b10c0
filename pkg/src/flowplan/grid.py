"""Uniform lattice graphs with multi-slope directed edges and static obstacles.

Vertices sit on a regular ``nx`` x ``ny`` lattice.  The edge stencil
around each vertex takes every integer offset ``(i, j)`` with Chebyshev
norm at most ``sector`` whose components are coprime; coprimality drops
collinear duplicates such as (2, 0), which merely retrace two (1, 0)
steps.  Growing the sector count adds edge slopes: 8 directions at
sector 1, 16 at sector 2, 32 at sector 3.  An edge exists when both of
its endpoints survive obstacle masking and its straight segment stays
clear of every obstacle.

Obstacle regions are closed: a point on a boundary counts as inside, a
segment tangent to a boundary counts as blocked.  That is the
conservative convention for collision avoidance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple


class GridError(ValueError):
    """A grid specification cannot produce a usable graph."""


def sector_offsets(n: int) -> list[tuple[int, int]]:
    """Directed lattice offsets radiating from a vertex at sector count ``n``.

    Every ``(i, j) != (0, 0)`` with ``max(|i|, |j|) <= n`` and
    ``gcd(|i|, |j|) == 1`` (with ``gcd(x, 0) = x``).  The set is symmetric
    under negation and axis swap, and nests as ``n`` grows.
    """
    if n < 1:
        raise ValueError(f"sector count must be >= 1, got {n}")
    offsets = []
    for j in range(-n, n + 1):
        for i in range(-n, n + 1):
            if (i or j) and math.gcd(abs(i), abs(j)) == 1:
                offsets.append((i, j))
    return offsets


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError(f"circle radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def contains(self, p) -> bool:
        dx = p[0] - self.center[0]
        dy = p[1] - self.center[1]
        return dx * dx + dy * dy <= self.radius * self.radius

    def blocks(self, p, q) -> bool:
        cx, cy = self.center
        ex, ey = q[0] - p[0], q[1] - p[1]
        wx, wy = cx - p[0], cy - p[1]
        denom = ex * ex + ey * ey
        s = 0.0 if denom == 0.0 else min(1.0, max(0.0, (wx * ex + wy * ey) / denom))
        dx = wx - s * ex
        dy = wy - s * ey
        return dx * dx + dy * dy <= self.radius * self.radius


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by its min and max corners."""

    low: tuple[float, float]
    high: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "low", (float(self.low[0]), float(self.low[1])))
        object.__setattr__(self, "high", (float(self.high[0]), float(self.high[1])))
        if not (self.low[0] < self.high[0] and self.low[1] < self.high[1]):
            raise ValueError(f"rectangle needs low < high per axis, got {self.low} .. {self.high}")

    def contains(self, p) -> bool:
        return self.low[0] <= p[0] <= self.high[0] and self.low[1] <= p[1] <= self.high[1]

    def blocks(self, p, q) -> bool:
        # Slab clipping of the segment parameter interval, closed bounds.
        t0, t1 = 0.0, 1.0
        for k in (0, 1):
            d = q[k] - p[k]
            if d == 0.0:
                if p[k] < self.low[k] or p[k] > self.high[k]:
                    return False
            else:
                ta = (self.low[k] - p[k]) / d
                tb = (self.high[k] - p[k]) / d
                if ta > tb:
                    ta, tb = tb, ta
                t0 = max(t0, ta)
                t1 = min(t1, tb)
                if t0 > t1:
                    return False
        return True


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon with counter-clockwise vertices."""

    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {n}")
        area2 = 0.0
        for k in range(n):
            ax, ay = verts[k]
            bx, by = verts[(k + 1) % n]
            if (ax, ay) == (bx, by):
                raise ValueError("polygon has repeated consecutive vertices")
            area2 += ax * by - bx * ay
            cx, cy = verts[(k + 2) % n]
            turn = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
            if turn < 0.0:
                raise ValueError("polygon must be convex and counter-clockwise")
        if not area2 > 0.0:
            raise ValueError("polygon must have positive area and counter-clockwise winding")

    def contains(self, p) -> bool:
        verts = self.vertices
        n = len(verts)
        for k in range(n):
            ax, ay = verts[k]
            bx, by = verts[(k + 1) % n]
            if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) < 0.0:
                return False
        return True

    def blocks(self, p, q) -> bool:
        # Clip the segment against each edge half-plane (Cyrus-Beck).
        verts = self.vertices
        n = len(verts)
        t0, t1 = 0.0, 1.0
        for k in range(n):
            ax, ay = verts[k]
            bx, by = verts[(k + 1) % n]
            ex, ey = bx - ax, by - ay
            f1 = ex * (p[1] - ay) - ey * (p[0] - ax)
            f2 = ex * (q[1] - ay) - ey * (q[0] - ax)
            df = f2 - f1
            if df == 0.0:
                if f1 < 0.0:
                    return False
            else:
                s = -f1 / df
                if df > 0.0:
                    t0 = max(t0, s)
                else:
                    t1 = min(t1, s)
                if t0 > t1:
                    return False
        return True


Obstacle = Circle | Rect | ConvexPolygon


def point_blocked(p, obstacles) -> bool:
    """True iff ``p`` lies inside (or on the boundary of) any obstacle."""
    return any(ob.contains(p) for ob in obstacles)


def segment_blocked(p1, p2, obstacles) -> bool:
    """True iff the closed segment p1-p2 meets any obstacle's closed region."""
    if p1[0] == p2[0] and p1[1] == p2[1]:
        raise ValueError("segment endpoints coincide")
    return any(ob.blocks(p1, p2) for ob in obstacles)


@dataclass(frozen=True)
class GridSpec:
    """Geometry of a uniform lattice: origin, node counts, spacing, sector."""

    origin: tuple[float, float]
    nx: int
    ny: int
    dx: float
    dy: float
    sector: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"need at least 2 nodes per axis, got {self.nx} x {self.ny}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError(f"node spacing must be positive, got dx={self.dx}, dy={self.dy}")
        if self.sector < 1:
            raise ValueError(f"sector count must be >= 1, got {self.sector}")

    def position(self, i: int, j: int) -> tuple[float, float]:
        return (self.origin[0] + i * self.dx, self.origin[1] + j * self.dy)

    def bounds(self) -> tuple[float, float, float, float]:
        """(x_min, y_min, x_max, y_max) of the lattice."""
        x0, y0 = self.origin
        return (x0, y0, x0 + (self.nx - 1) * self.dx, y0 + (self.ny - 1) * self.dy)


class Edge(NamedTuple):
    """Directed edge: target vertex, geometric length, unit direction."""

    target: int
    length: float
    ux: float
    uy: float


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable directed graph over surviving lattice vertices.

    ``positions[k]`` is the coordinate of vertex ``k``; ``lattice[k]`` its
    integer lattice index ``(i, j)``.  Vertices are numbered row-major
    from the origin so runs are reproducible.
    """

    spec: GridSpec
    positions: tuple[tuple[float, float], ...]
    lattice: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[Edge, ...], ...]
    edge_count: int
    vertex_index: dict[tuple[int, int], int] = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.positions)

    def vertex_at(self, i: int, j: int) -> int | None:
        """Vertex number at lattice coordinates, or None if masked/absent."""
        return self.vertex_index.get((i, j))

    def nearest_vertex(self, p) -> tuple[int, float]:
        """Closest vertex to ``p`` and its distance."""
        best, best_d2 = 0, math.inf
        px, py = float(p[0]), float(p[1])
        for k, (x, y) in enumerate(self.positions):
            d2 = (x - px) ** 2 + (y - py) ** 2
            if d2 < best_d2:
                best, best_d2 = k, d2
        return best, math.sqrt(best_d2)

    def iter_edges(self) -> Iterator[tuple[int, Edge]]:
        for u, row in enumerate(self.adjacency):
            for e in row:
                yield u, e


def build_grid(spec: GridSpec, obstacles=()) -> Graph:
    """Build the lattice graph for ``spec``, masking obstacles.

    Masking removes vertices inside any obstacle (boundaries count) and
    edges whose straight segment crosses one, even when both endpoints are
    free; it never adds anything.
    """
    obstacles = tuple(obstacles)
    positions: list[tuple[float, float]] = []
    lattice: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for j in range(spec.ny):
        for i in range(spec.nx):
            p = spec.position(i, j)
            if obstacles and point_blocked(p, obstacles):
                continue
            index[(i, j)] = len(positions)
            positions.append(p)
            lattice.append((i, j))
    if not positions:
        raise GridError("every lattice vertex lies inside an obstacle")

    offsets = sector_offsets(spec.sector)
    adjacency: list[tuple[Edge, ...]] = []
    count = 0
    for (i, j), p in zip(lattice, positions):
        edges = []
        for oi, oj in offsets:
            v = index.get((i + oi, j + oj))
            if v is None:
                continue
            q = spec.position(i + oi, j + oj)
            if obstacles and segment_blocked(p, q, obstacles):
                continue
            ex, ey = q[0] - p[0], q[1] - p[1]
            length = math.hypot(ex, ey)
            edges.append(Edge(v, length, ex / length, ey / length))
        adjacency.append(tuple(edges))
        count += len(edges)

    return Graph(
        spec=spec,
        positions=tuple(positions),
        lattice=tuple(lattice),
        adjacency=tuple(adjacency),
        edge_count=count,
        vertex_index=index,
    )
