from __future__ import annotations

import math

import pytest

from flowplan.grid import (Circle, ConvexPolygon, GridError, GridSpec, Rect, build_grid,
                           point_blocked, sector_offsets, segment_blocked)


def expected_edge_count(nx: int, ny: int, sector: int) -> int:
    """Closed-form count for an obstacle-free grid: each offset (i, j)
    fits (nx - |i|) * (ny - |j|) times."""
    return sum((nx - abs(i)) * (ny - abs(j)) for i, j in sector_offsets(sector))


class TestSectorOffsets:
    def test_sector_one_is_the_eight_neighbours(self):
        assert set(sector_offsets(1)) == {
            (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)}

    def test_sector_two_adds_knight_moves(self):
        extra = set(sector_offsets(2)) - set(sector_offsets(1))
        assert extra == {(1, 2), (1, -2), (-1, 2), (-1, -2),
                         (2, 1), (2, -1), (-2, 1), (-2, -1)}

    def test_sector_three_count_and_exclusions(self):
        offs = set(sector_offsets(3))
        assert len(offs) == 32
        # collinear duplicates of shorter offsets never appear
        for excluded in ((2, 0), (0, 2), (2, 2), (3, 0), (3, 3), (-2, -2)):
            assert excluded not in offs
        for included in ((3, 1), (3, 2), (-3, 2), (1, -3)):
            assert included in offs

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sector_offsets(0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nesting(self, n):
        assert set(sector_offsets(n)) <= set(sector_offsets(n + 1))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_symmetry_under_negation_and_swap(self, n):
        offs = set(sector_offsets(n))
        assert offs == {(-i, -j) for i, j in offs}
        assert offs == {(j, i) for i, j in offs}


class TestObstacleGeometry:
    def test_segment_through_circle_center(self):
        circle = Circle(center=(5.0, 0.0), radius=1.0)
        assert segment_blocked((0.0, 0.0), (10.0, 0.0), [circle])

    def test_disjoint_segment(self):
        obstacles = [Circle(center=(5.0, 5.0), radius=1.0),
                     Rect(low=(8.0, 8.0), high=(9.0, 9.0))]
        assert not segment_blocked((0.0, 0.0), (10.0, 0.0), obstacles)

    def test_tangent_segment_is_blocked(self):
        # closed-region convention: touching the boundary counts
        circle = Circle(center=(5.0, 1.0), radius=1.0)
        assert segment_blocked((0.0, 0.0), (10.0, 0.0), [circle])

    def test_degenerate_segment_rejected(self):
        with pytest.raises(ValueError):
            segment_blocked((1.0, 1.0), (1.0, 1.0), [])

    def test_rect_crossing_and_corner(self):
        rect = Rect(low=(2.0, 2.0), high=(4.0, 4.0))
        assert segment_blocked((0.0, 3.0), (10.0, 3.0), [rect])
        assert segment_blocked((0.0, 0.0), (2.0, 2.0), [rect])  # endpoint on corner
        assert not segment_blocked((0.0, 0.0), (1.9, 1.9), [rect])

    def test_polygon_contains_and_blocks(self):
        tri = ConvexPolygon(vertices=((0.0, 0.0), (4.0, 0.0), (2.0, 3.0)))
        assert tri.contains((2.0, 1.0))
        assert tri.contains((0.0, 0.0))  # vertex counts as inside
        assert not tri.contains((2.0, 3.5))
        assert segment_blocked((-1.0, 1.0), (5.0, 1.0), [tri])
        assert not segment_blocked((-1.0, 4.0), (5.0, 4.0), [tri])

    def test_point_blocked(self):
        circle = Circle(center=(0.0, 0.0), radius=2.0)
        assert point_blocked((2.0, 0.0), [circle])  # boundary inside
        assert not point_blocked((2.1, 0.0), [circle])

    def test_invalid_shapes_rejected(self):
        with pytest.raises(ValueError):
            Circle(center=(0.0, 0.0), radius=-1.0)
        with pytest.raises(ValueError):
            Rect(low=(1.0, 0.0), high=(0.0, 1.0))
        with pytest.raises(ValueError):
            ConvexPolygon(vertices=((0.0, 0.0), (1.0, 0.0)))
        with pytest.raises(ValueError):
            # clockwise winding
            ConvexPolygon(vertices=((0.0, 0.0), (0.0, 1.0), (1.0, 0.0)))
        with pytest.raises(ValueError):
            # reflex vertex
            ConvexPolygon(vertices=((0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (2.0, 1.0)))


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(origin=(0, 0), nx=1, ny=5, dx=1.0, dy=1.0)
        with pytest.raises(ValueError):
            GridSpec(origin=(0, 0), nx=5, ny=5, dx=0.0, dy=1.0)
        with pytest.raises(ValueError):
            GridSpec(origin=(0, 0), nx=5, ny=5, dx=1.0, dy=1.0, sector=0)

    def test_positions_and_bounds(self):
        spec = GridSpec(origin=(10.0, -5.0), nx=4, ny=3, dx=2.0, dy=1.5)
        assert spec.position(0, 0) == (10.0, -5.0)
        assert spec.position(3, 2) == (16.0, -2.0)
        assert spec.bounds() == (10.0, -5.0, 16.0, -2.0)


class TestBuildGrid:
    @pytest.mark.parametrize("nx,ny,sector,vertices,edges", [
        (31, 13, 1, 403, 2964),
        (31, 13, 2, 403, 5676),
        (31, 13, 3, 403, 10612),
        (41, 21, 1, 861, 6520),
        (41, 21, 2, 861, 12680),
        (41, 21, 3, 861, 24296),
    ])
    def test_reference_counts(self, nx, ny, sector, vertices, edges):
        spec = GridSpec(origin=(0.0, 0.0), nx=nx, ny=ny, dx=1.0, dy=1.0, sector=sector)
        graph = build_grid(spec)
        assert graph.n_vertices == vertices
        assert graph.edge_count == edges
        assert graph.edge_count == expected_edge_count(nx, ny, sector)

    @pytest.mark.parametrize("nx,ny,sector", [(5, 4, 1), (7, 6, 2), (6, 9, 3), (4, 4, 4)])
    def test_count_formula(self, nx, ny, sector):
        spec = GridSpec(origin=(0.0, 0.0), nx=nx, ny=ny, dx=0.7, dy=1.3, sector=sector)
        assert build_grid(spec).edge_count == expected_edge_count(nx, ny, sector)

    def test_edge_geometry(self):
        spec = GridSpec(origin=(1.0, 2.0), nx=5, ny=4, dx=2.0, dy=3.0, sector=2)
        graph = build_grid(spec)
        for u, e in graph.iter_edges():
            px, py = graph.positions[u]
            qx, qy = graph.positions[e.target]
            length = math.hypot(qx - px, qy - py)
            assert e.length == pytest.approx(length, rel=1e-12)
            assert e.ux == pytest.approx((qx - px) / length, rel=1e-12)
            assert e.uy == pytest.approx((qy - py) / length, rel=1e-12)
            assert e.target != u

    def test_reverse_edges_exist_without_obstacles(self):
        spec = GridSpec(origin=(0.0, 0.0), nx=6, ny=5, dx=1.0, dy=1.0, sector=2)
        graph = build_grid(spec)
        edges = {(u, e.target) for u, e in graph.iter_edges()}
        assert edges == {(v, u) for u, v in edges}

    def test_row_major_indexing(self):
        spec = GridSpec(origin=(0.0, 0.0), nx=3, ny=2, dx=1.0, dy=1.0)
        graph = build_grid(spec)
        assert graph.lattice == ((0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1))
        assert graph.vertex_at(2, 1) == 5
        assert graph.vertex_at(3, 0) is None

    def test_obstacle_masks_exact_node_block(self):
        # rectangle strictly between lattice rows around a 9 x 5 node block
        spec = GridSpec(origin=(0.0, -4.2), nx=41, ny=21, dx=0.525, dy=0.42, sector=1)
        rect = Rect(low=(7.1, -0.6), high=(11.8, 1.4))
        graph = build_grid(spec, [rect])
        assert graph.n_vertices == 861 - 45 == 816

    def test_masking_is_monotone(self):
        spec = GridSpec(origin=(0.0, 0.0), nx=10, ny=8, dx=1.0, dy=1.0, sector=2)
        free = build_grid(spec)
        masked = build_grid(spec, [Circle(center=(4.5, 3.5), radius=1.6)])
        assert masked.n_vertices < free.n_vertices
        assert masked.edge_count < free.edge_count
        free_edges = {(free.positions[u], free.positions[e.target])
                      for u, e in free.iter_edges()}
        masked_edges = {(masked.positions[u], masked.positions[e.target])
                        for u, e in masked.iter_edges()}
        assert masked_edges <= free_edges

    def test_edges_crossing_obstacle_removed_even_with_free_endpoints(self):
        # a thin wall between two columns removes the crossing edges only
        spec = GridSpec(origin=(0.0, 0.0), nx=4, ny=3, dx=2.0, dy=2.0, sector=1)
        wall = Rect(low=(2.9, -0.5), high=(3.1, 4.5))
        graph = build_grid(spec, [wall])
        assert graph.n_vertices == 12  # no vertex sits on the wall
        a = graph.vertex_at(1, 1)
        b = graph.vertex_at(2, 1)
        targets = {e.target for e in graph.adjacency[a]}
        assert b not in targets

    def test_all_vertices_blocked_raises(self):
        spec = GridSpec(origin=(0.0, 0.0), nx=3, ny=3, dx=1.0, dy=1.0)
        with pytest.raises(GridError):
            build_grid(spec, [Circle(center=(1.0, 1.0), radius=10.0)])

    def test_nearest_vertex(self):
        spec = GridSpec(origin=(0.0, 0.0), nx=5, ny=5, dx=1.0, dy=1.0)
        graph = build_grid(spec)
        idx, dist = graph.nearest_vertex((2.2, 3.4))
        assert graph.positions[idx] == (2.0, 3.0)
        assert dist == pytest.approx(math.hypot(0.2, 0.4))
