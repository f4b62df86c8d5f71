"""Marching-squares contours and true-oval filtering."""

import math

import numpy as np

from ovalkit.cayley import CayleyParams, bifocal_residual, cayley_implicit
from ovalkit.contours import ContourGrid, contour, filter_true_oval
from ovalkit.implicit import ImplicitPolynomial

from .oracles import hausdorff, on_axis_crossing

UNIT_CIRCLE = ImplicitPolynomial.from_terms([(2, 0, 1), (0, 2, 1), (0, 0, -1)])


def test_circle_contour_closed_and_accurate():
    grid = ContourGrid(-2.0, 2.0, -2.0, 2.0, 256, 256)
    loops = contour(UNIT_CIRCLE, grid)
    assert len(loops.arcs) == 1
    arc = loops.arcs[0]
    assert arc.closed
    cell_diag = math.hypot(4.0 / 255, 4.0 / 255)
    r = np.hypot(arc.points[:, 0], arc.points[:, 1])
    assert np.abs(r - 1.0).max() <= 2.0 * cell_diag


def test_cayley_3_2_four_loops_two_true():
    params = CayleyParams(3.0, 2.0)
    loops = contour(cayley_implicit(params), ContourGrid(-9.0, 9.0, -6.0, 6.0, 512, 512))
    assert len(loops.arcs) == 4
    assert all(a.closed for a in loops.arcs)
    kept = filter_true_oval(loops, params)
    assert len(kept.arcs) == 2
    for arc in kept.arcs:
        res = np.abs(bifocal_residual((arc.points[:, 0], arc.points[:, 1]), params))
        assert float(np.median(res)) <= 1e-3
        assert res.max() <= 1e-2
    discarded = [a for a in loops.arcs if not any(a is k for k in kept.arcs)]
    assert len(discarded) == 2
    for arc in discarded:
        res = np.abs(bifocal_residual((arc.points[:, 0], arc.points[:, 1]), params))
        assert float(np.median(res)) >= 1e-2
        assert res.min() >= 1e-2


def test_cayley_3_6_loop_filtering():
    # oracle: at the default padded grid the b = 6 zero set shows the true
    # convex oval plus one spurious loop around each focus
    params = CayleyParams(3.0, 6.0)
    loops = contour(cayley_implicit(params), ContourGrid.for_params(params))
    assert len(loops.arcs) == 3
    kept = filter_true_oval(loops, params)
    assert len(kept.arcs) == 1


def test_lemniscate_contour_reaches_node():
    params = CayleyParams(3.0, 3.0)
    loops = contour(cayley_implicit(params), ContourGrid.for_params(params))
    pts = loops.all_points()
    # the node (a double root of P(x, 0)) is at the origin for a = b
    cell = 2.0 * 1.2 * 6.0 / 511
    assert np.min(np.hypot(pts[:, 0], pts[:, 1])) <= 2.0 * cell
    # and the outer crossing matches the bifocal solution
    x_cross = on_axis_crossing(3.0, 3.0)
    on_axis = pts[np.abs(pts[:, 1]) <= 2.0 * cell]
    assert np.min(np.abs(on_axis[:, 0] - x_cross)) <= 2.0 * cell


def test_vertex_values_shrink_with_resolution():
    params = CayleyParams(3.0, 2.0)
    poly = cayley_implicit(params)

    def max_vertex_value(n):
        loops = contour(poly, ContourGrid(-9.0, 9.0, -6.0, 6.0, n, n))
        worst = 0.0
        for arc in loops.arcs:
            worst = max(worst, float(np.abs(poly(arc.points[:, 0], arc.points[:, 1])).max()))
        return worst

    assert max_vertex_value(128) >= 2.0 * max_vertex_value(256)


def test_vertex_values_below_edge_bound():
    # linear interpolation puts each vertex between two nodes of opposite
    # sign; its polynomial value must stay below the larger endpoint value
    params = CayleyParams(3.0, 2.0)
    poly = cayley_implicit(params)
    grid = ContourGrid(-9.0, 9.0, -6.0, 6.0, 256, 256)
    X, Y = np.meshgrid(grid.xs, grid.ys, indexing="ij")
    V = np.abs(np.asarray(poly(X, Y)))
    hx = grid.xs[1] - grid.xs[0]
    loops = contour(poly, grid)
    for arc in loops.arcs:
        for x, y in arc.points[:: max(1, len(arc) // 64)]:
            i = min(int((x - grid.xmin) / hx), grid.nx - 2)
            j = min(int((y - grid.ymin) / hx), grid.ny - 2)
            local = V[max(i - 1, 0) : i + 3, max(j - 1, 0) : j + 3].max()
            assert abs(float(poly(x, y))) <= local


def test_near_circular_large_e():
    params = CayleyParams(1.0, 10.0)
    loops = contour(cayley_implicit(params), ContourGrid.for_params(params))
    kept = filter_true_oval(loops, params)
    assert len(kept.arcs) == 1
    # semi-extents from the bifocal equation: x reach (b + sqrt(b^2+4a^2))/2,
    # y reach sqrt(b^2 - a^2); their mean is the best-fitting circle radius
    r = 0.5 * (on_axis_crossing(1.0, 10.0) + math.sqrt(10.0 ** 2 - 1.0))
    ts = np.linspace(0.0, 2.0 * math.pi, 2000, endpoint=False)
    circle_pts = np.column_stack([r * np.cos(ts), r * np.sin(ts)])
    assert hausdorff(kept.arcs[0].points, circle_pts) <= 0.1


def test_grid_validation():
    import pytest

    with pytest.raises(ValueError):
        ContourGrid(0.0, 1.0, 0.0, 1.0, 1, 8)
    with pytest.raises(ValueError):
        ContourGrid(1.0, 1.0, 0.0, 1.0, 8, 8)
