from __future__ import annotations

import sys
from pathlib import Path

# Allow running the suite from a plain checkout without installation.
_SRC = Path(__file__).resolve().parent.parent / "src"
if _SRC.is_dir() and str(_SRC) not in sys.path:
    try:
        import flowplan  # noqa: F401
    except ModuleNotFoundError:
        sys.path.insert(0, str(_SRC))

import math

from flowplan.grid import Edge


class FakeGraph:
    """Minimal adjacency-only graph for exercising the searches directly."""

    def __init__(self, n: int, edges):
        adj = [[] for _ in range(n)]
        for u, v, length in edges:
            adj[u].append(Edge(target=v, length=float(length), ux=1.0, uy=0.0))
        self.adjacency = tuple(tuple(row) for row in adj)

    @property
    def n_vertices(self) -> int:
        return len(self.adjacency)


def brute_force_shortest(graph, weights, source):
    """All-simple-paths minimum: the independent reference for dijkstra."""
    n = len(graph.adjacency)
    best = [math.inf] * n
    best[source] = 0.0

    def visit(u, cost, seen):
        for k, e in enumerate(graph.adjacency[u]):
            v = e.target
            if v in seen:
                continue
            c = cost + weights[u][k]
            if c < best[v]:
                best[v] = c
            visit(v, c, seen | {v})

    visit(source, 0.0, {source})
    return best
