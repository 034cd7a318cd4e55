import numpy as np
import pytest

from kfsteiner.polygons import ConvexPolygon, regular_polygon
from kfsteiner.rasters import GridSpec, RasterSet, rasterize


def convex_hull(points):
    """Monotone-chain hull; returns CCW vertices."""
    pts = points[np.lexsort((points[:, 1], points[:, 0]))]

    def half(chain):
        out = []
        for p in chain:
            while len(out) >= 2:
                ax, ay = out[-2]
                bx, by = out[-1]
                if (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax) <= 0:
                    out.pop()
                else:
                    break
            out.append((p[0], p[1]))
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def random_convex_polygon(rng, n_points=8, scale=1.0, center=(0.0, 0.0)):
    """Hull of random points; retries until at least a triangle appears."""
    while True:
        pts = (rng.random((n_points, 2)) * 2.0 - 1.0) * scale + np.asarray(center)
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return ConvexPolygon(hull)


def random_raster(rng, grid, max_disks=3):
    """Union of a few random disks rasterized on the given grid."""
    occ = np.zeros((grid.ny, grid.nx))
    for _ in range(int(rng.integers(1, max_disks + 1))):
        r = 0.1 + 0.2 * rng.random()
        cx, cy = (rng.random(2) * 2.0 - 1.0) * 0.45
        disk = rasterize(regular_polygon(r, 64, center=(cx, cy)), grid)
        occ = np.clip(occ + disk.occ, 0.0, 1.0)
    return RasterSet(occ, grid)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)


@pytest.fixture(scope="session")
def unit_grid_128():
    return GridSpec.cover(1.0, n=128)


@pytest.fixture(scope="session")
def unit_grid_256():
    return GridSpec.cover(1.0, n=256)
