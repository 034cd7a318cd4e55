import math

import numpy as np
import pytest

from conftest import random_raster
from kfsteiner.metrics import (
    MetricsRecord,
    area,
    d1,
    d1_to_ball,
    grid_tolerance,
    hausdorff,
    measure,
    moment_of_inertia,
    perimeter_estimate,
)
from kfsteiner.polygons import Ball, ConvexPolygon, regular_polygon
from kfsteiner.rasters import GridSpec, RasterSet, rasterize, steiner_raster

CENTERED_SQUARE = ConvexPolygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)])

# d1 between the centered unit square and the ball of equal area, from the
# circular-segment decomposition (see test_polygons for the derivation)
_R = math.sqrt(1.0 / math.pi)
_SEG = _R * _R * math.acos(0.5 / _R) - 0.5 * math.sqrt(_R * _R - 0.25)
SQUARE_BALL_D1 = 2.0 * (1.0 - (math.pi * _R * _R - 4.0 * _SEG))


def test_area_dispatch():
    assert area(CENTERED_SQUARE) == pytest.approx(1.0)
    assert area(Ball(1.0)) == pytest.approx(math.pi)
    g = GridSpec.cover(1.5, n=128)
    assert area(rasterize(Ball(1.0), g)) == pytest.approx(math.pi, abs=1e-2)
    with pytest.raises(TypeError):
        area("nope")


def test_moment_examples():
    assert moment_of_inertia(CENTERED_SQUARE) == pytest.approx(1.0 / 6.0)
    disk = regular_polygon(1.0 / math.sqrt(math.pi), 2048)
    assert moment_of_inertia(disk) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-5)
    # the ball minimizes the moment at fixed area
    assert moment_of_inertia(CENTERED_SQUARE) > moment_of_inertia(disk)
    assert moment_of_inertia(Ball(1.0)) == pytest.approx(math.pi / 2.0)


def test_moment_raster_full_cells_exact():
    g = GridSpec(nx=10, ny=10, h=0.1)
    rs = RasterSet(np.ones((10, 10)), g)
    assert moment_of_inertia(rs) == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_d1_examples(unit_grid_256):
    a = rasterize(regular_polygon(0.4, 64, center=(0.45, 0.0)), unit_grid_256)
    assert d1(a, a) == 0.0
    g = GridSpec.cover(2.5, n=256)
    sq1 = rasterize(ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)]), g)
    sq2 = rasterize(ConvexPolygon([(-1.5, 0), (-0.5, 0), (-0.5, 1), (-1.5, 1)]), g)
    assert d1(sq1, sq2) == pytest.approx(2.0, abs=1e-6)


def test_d1_concentric_balls(unit_grid_256):
    a = rasterize(Ball(0.9), unit_grid_256)
    b = rasterize(Ball(0.6), unit_grid_256)
    assert d1(a, b) == pytest.approx(math.pi * (0.81 - 0.36), abs=1e-2)


def test_d1_is_a_metric(unit_grid_128, rng):
    a = random_raster(rng, unit_grid_128)
    b = random_raster(rng, unit_grid_128)
    c = random_raster(rng, unit_grid_128)
    assert d1(a, b) == d1(b, a)
    assert d1(a, c) <= d1(a, b) + d1(b, c) + 1e-12
    assert d1(a, a) == 0.0


def test_d1_to_ball_fixed_point(unit_grid_256):
    disk = rasterize(Ball(1.0), unit_grid_256)
    assert d1_to_ball(disk) <= grid_tolerance(disk)


def test_d1_to_ball_square_exact_matches_oracle():
    assert d1_to_ball(CENTERED_SQUARE) == pytest.approx(SQUARE_BALL_D1, abs=1e-12)


def test_d1_to_ball_square_high_resolution_oracle():
    # fine grid (h close to 1e-3) pins the value; a coarse grid must agree
    # within 2 percent
    rad = math.sqrt(0.5)
    fine = rasterize(CENTERED_SQUARE, GridSpec.cover(rad, n=1536))
    coarse = rasterize(CENTERED_SQUARE, GridSpec.cover(rad, n=192))
    fine_val = d1_to_ball(fine)
    coarse_val = d1_to_ball(coarse)
    assert fine_val == pytest.approx(SQUARE_BALL_D1, rel=5e-3)
    assert coarse_val == pytest.approx(fine_val, rel=0.02)


def test_d1_to_ball_empty_set(unit_grid_128):
    empty = RasterSet(np.zeros((128, 128)), unit_grid_128)
    assert d1_to_ball(empty) == 0.0


def test_ball_map_contraction(unit_grid_128, rng):
    # mapping each set to its equal-area centered ball contracts d1
    for _ in range(100):
        a = random_raster(rng, unit_grid_128)
        b = random_raster(rng, unit_grid_128)
        lhs = abs(a.area() - b.area())  # exact d1 of the two centered balls
        tol = max(grid_tolerance(a), grid_tolerance(b))
        assert lhs <= d1(a, b) + tol


def test_moment_monotone_under_symmetrization(unit_grid_128, rng):
    for _ in range(25):
        rs = random_raster(rng, unit_grid_128)
        theta = rng.random() * math.pi
        out = steiner_raster(rs, theta)
        assert moment_of_inertia(out) <= moment_of_inertia(rs) + grid_tolerance(rs)


def test_moment_equality_for_symmetric_raster(unit_grid_256):
    disk = rasterize(Ball(0.9), unit_grid_256)
    out = steiner_raster(disk, 1.234)
    assert abs(moment_of_inertia(out) - moment_of_inertia(disk)) <= grid_tolerance(disk)


def test_hausdorff_examples():
    sq_a = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert hausdorff(sq_a, sq_a, spacing=5e-3) == 0.0
    for t in (0.1, 0.35):
        sq_b = ConvexPolygon([(t, 0), (1 + t, 0), (1 + t, 1), (t, 1)])
        assert hausdorff(sq_a, sq_b, spacing=5e-3) == pytest.approx(t, abs=1e-6)


def test_hausdorff_square_vs_ball_polygon_stable_across_resolutions():
    expected = math.sqrt(0.5) - _R  # corner excess dominates
    vals = []
    for n in (256, 512):
        ball_poly = regular_polygon(_R, n)
        for spacing in (2e-3, 1e-3):
            vals.append(hausdorff(CENTERED_SQUARE, ball_poly, spacing=spacing))
    assert max(vals) - min(vals) <= 0.01 * expected
    assert vals[-1] == pytest.approx(expected, rel=1e-3)


def test_perimeter_estimates(unit_grid_256):
    sq = rasterize(CENTERED_SQUARE, GridSpec.cover(1.0, n=256))
    assert perimeter_estimate(sq) == pytest.approx(4.0, rel=0.05)
    ball = rasterize(Ball(1.0), unit_grid_256)
    assert perimeter_estimate(ball) == pytest.approx(2.0 * math.pi, rel=0.05)
    empty = RasterSet(np.zeros((64, 64)), GridSpec(nx=64, ny=64, h=0.1))
    assert perimeter_estimate(empty) == 0.0


def test_perimeter_never_grows_much(unit_grid_128, rng):
    for _ in range(10):
        rs = random_raster(rng, unit_grid_128)
        theta = rng.random() * math.pi
        out = steiner_raster(rs, theta)
        assert perimeter_estimate(out) <= 1.05 * perimeter_estimate(rs)


def test_measure_bundles(unit_grid_128):
    disk = rasterize(Ball(0.8), unit_grid_128)
    rec = measure(disk, with_perimeter=True)
    assert isinstance(rec, MetricsRecord)
    assert rec.area == pytest.approx(disk.area())
    assert rec.perimeter == pytest.approx(2 * math.pi * 0.8, rel=0.05)
    assert rec.hausdorff_to_ball is None
    poly_rec = measure(CENTERED_SQUARE, with_hausdorff=True, with_perimeter=True)
    assert poly_rec.perimeter == pytest.approx(4.0)
    assert poly_rec.hausdorff_to_ball == pytest.approx(math.sqrt(0.5) - _R, abs=1e-12)
