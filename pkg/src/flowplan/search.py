"""Single-source shortest arrival-time searches.

Two variants share the same vertex-labelling machinery:

* ``dijkstra`` -- the classic algorithm over precomputed non-negative
  weights; settled vertices are final.
* ``time_dependent_search`` -- a label-correcting variant that evaluates
  each edge's travel time at the departure time of the relaxation (the
  tail vertex's current arrival label), so edge costs may change while
  the search runs.  Labels are absolute arrival times seeded with the
  mission start time.  An improvement re-opens its vertex even when that
  vertex was already settled.

With strictly positive costs every relaxation produces an arrival later
than the extracted key, extraction order is monotone and re-opening never
actually fires; it exists for cost functions without that guarantee, and
an insertion budget turns a pathological feedback loop into a clean error
instead of a hang.

The priority queue is a binary heap with lazy deletion: decrease-key
pushes a fresh entry and stale entries are skipped on pop, which
preserves extract-min order.  Ties break toward the lowest vertex index
so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import Callable, Sequence

from .grid import Edge, Graph

WHITE, GRAY, BLACK = 0, 1, 2

EdgeTimeFn = Callable[[int, Edge, float], float]


class NoFeasiblePathError(RuntimeError):
    """The requested goal cannot be reached by any feasible route."""


class SearchLimitError(RuntimeError):
    """The label-correcting search exceeded its insertion budget."""


@dataclass
class SearchStats:
    extractions: int = 0
    insertions: int = 0
    reexpansions: int = 0


@dataclass
class SearchResult:
    """Arrival labels and predecessors of one completed search."""

    d: list[float]
    predecessor: list[int]
    t0: float
    source: int
    stats: SearchStats = field(default_factory=SearchStats)


def dijkstra(graph: Graph, source: int, weights: Sequence[Sequence[float]]) -> SearchResult:
    """Shortest path tree over fixed non-negative weights.

    ``weights[u][k]`` belongs to ``graph.adjacency[u][k]``.  Settled
    (black) vertices are never re-inserted.  Labels start at 0.
    """
    adjacency = graph.adjacency
    n = len(adjacency)
    if not 0 <= source < n:
        raise ValueError(f"source vertex {source} out of range 0..{n - 1}")
    if len(weights) != n:
        raise ValueError("weights are not aligned with the adjacency structure")
    for row, ws in zip(adjacency, weights):
        if len(ws) != len(row):
            raise ValueError("weights are not aligned with the adjacency structure")
        for w in ws:
            if w < 0:
                raise ValueError(f"negative edge weight {w}")

    d = [math.inf] * n
    pred = [-1] * n
    color = bytearray(n)
    stats = SearchStats()

    d[source] = 0.0
    color[source] = GRAY
    stats.insertions += 1
    heap: list[tuple[float, int]] = [(0.0, source)]
    while heap:
        key, u = heappop(heap)
        if color[u] != GRAY or key != d[u]:
            continue  # stale lazy-deletion entry
        color[u] = BLACK
        stats.extractions += 1
        ws = weights[u]
        for k, e in enumerate(adjacency[u]):
            v = e.target
            dv = key + ws[k]
            if dv < d[v]:
                d[v] = dv
                pred[v] = u
                if color[v] == GRAY:
                    heappush(heap, (dv, v))
                elif color[v] == WHITE:
                    color[v] = GRAY
                    stats.insertions += 1
                    heappush(heap, (dv, v))
    return SearchResult(d=d, predecessor=pred, t0=0.0, source=source, stats=stats)


def time_dependent_search(graph: Graph, source: int, t0: float, edge_time: EdgeTimeFn,
                          *, insertion_budget: int = 10) -> SearchResult:
    """Label-correcting search with departure-time-dependent edge costs.

    ``edge_time(u, edge, t)`` returns the travel duration along ``edge``
    out of vertex ``u`` when departing at time ``t``.  ``d[v]`` holds the
    absolute arrival time at ``v``, seeded with ``d[source] = t0``, so the
    cost callback always receives a true departure time.  Any improvement
    (re)inserts its vertex regardless of color.  Total insertions are
    capped at ``insertion_budget * n_vertices``.
    """
    adjacency = graph.adjacency
    n = len(adjacency)
    if not 0 <= source < n:
        raise ValueError(f"source vertex {source} out of range 0..{n - 1}")
    if not math.isfinite(t0):
        raise ValueError(f"start time must be finite, got {t0}")

    d = [math.inf] * n
    pred = [-1] * n
    color = bytearray(n)
    stats = SearchStats()
    budget = insertion_budget * n

    d[source] = t0
    color[source] = GRAY
    stats.insertions += 1
    heap: list[tuple[float, int]] = [(t0, source)]
    while heap:
        key, u = heappop(heap)
        if color[u] != GRAY or key != d[u]:
            continue  # stale lazy-deletion entry
        color[u] = BLACK
        stats.extractions += 1
        for e in adjacency[u]:
            v = e.target
            dv = edge_time(u, e, key) + key
            if dv < d[v]:
                d[v] = dv
                pred[v] = u
                if color[v] == GRAY:
                    heappush(heap, (dv, v))
                else:
                    if color[v] == BLACK:
                        stats.reexpansions += 1
                    color[v] = GRAY
                    stats.insertions += 1
                    if stats.insertions > budget:
                        raise SearchLimitError(
                            f"insertion budget exhausted: {stats.insertions} insertions on "
                            f"{n} vertices (budget {insertion_budget} per vertex); the edge-cost "
                            f"function keeps improving settled vertices"
                        )
                    heappush(heap, (dv, v))
    return SearchResult(d=d, predecessor=pred, t0=t0, source=source, stats=stats)


def extract_path(result: SearchResult, source: int, goal: int,
                 *, infeasible_threshold: float | None = None) -> list[int]:
    """Vertex path from ``source`` to ``goal`` out of the predecessor labels.

    Raises ``NoFeasiblePathError`` when the goal was never reached, or --
    given ``infeasible_threshold`` -- when its travel duration is at least
    that threshold, meaning the only routes found cross penalized
    (unholdable) edges.
    """
    if source != result.source:
        raise ValueError(f"result was computed from source {result.source}, not {source}")
    dg = result.d[goal]
    if math.isinf(dg):
        raise NoFeasiblePathError(f"no feasible path: vertex {goal} is unreachable from {source}")
    if infeasible_threshold is not None and dg - result.t0 >= infeasible_threshold:
        raise NoFeasiblePathError(
            f"no feasible path: every route to vertex {goal} crosses an impassable edge"
        )
    path = [goal]
    v = goal
    n = len(result.d)
    while v != source:
        v = result.predecessor[v]
        if v < 0 or len(path) > n:
            raise RuntimeError("corrupt predecessor chain")
        path.append(v)
    path.reverse()
    return path


def relaxation_violations(graph: Graph, result: SearchResult, edge_time: EdgeTimeFn,
                          tol: float = 1e-9) -> list[tuple[int, int, float, float]]:
    """Edges that could still improve an arrival label.

    Sweeps every edge once and reports ``(u, v, achievable, labeled)``
    whenever departing ``u`` at its label would reach ``v`` more than
    ``tol`` earlier than ``v``'s label.  An empty list certifies the
    search ended at its fixed point.
    """
    violations = []
    for u, row in enumerate(graph.adjacency):
        du = result.d[u]
        if math.isinf(du):
            continue
        for e in row:
            dv = edge_time(u, e, du) + du
            if dv < result.d[e.target] - tol:
                violations.append((u, e.target, dv, result.d[e.target]))
    return violations
