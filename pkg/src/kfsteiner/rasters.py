"""Occupancy-grid planar sets and their symmetrization.

A RasterSet stores per-cell area fractions in [0, 1] on a square-cell
grid whose center sits at a known world position (the origin for
everything this package builds). Symmetrization in a general direction
resamples the grid into a frame where the direction is column-aligned,
applies an exact symmetric decreasing rearrangement to every column,
resamples back, and rescales the occupancy so the total mass matches
the input exactly. Axis-aligned directions skip the resampling and are
pure permutations of cell values.

Resampling pulls each target cell from the overlap of its unit-cell box
with the source grid at the preimage of the cell center, which is the
bilinear kernel; values stay in [0, 1] and mass drift before the final
rescale is a fraction of a percent.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .polygons import Ball, ConvexPolygon, as_theta

__all__ = [
    "GridSpec",
    "RasterSet",
    "AlignedRun",
    "rasterize",
    "annulus_fixture",
    "steiner_raster",
    "reflect_raster",
    "resample_to",
    "read_pgm",
    "write_pgm",
]

PGM_MAXVAL = 65535

#: Subsamples per axis for partially covered disk cells.
DISK_SUPERSAMPLES = 16

#: Occupancy below this is zeroed after a resampled symmetrization. The
#: removed mass (at most cells * floor * h**2 per step) sits orders of
#: magnitude under the renormalization budget; without the floor the
#: sorted rearrangement keeps extending a heavy tail of dust cells.
DUST_FLOOR = 1e-7


@dataclass(frozen=True)
class GridSpec:
    """Square-cell grid: nx columns, ny rows, cell size h, world center."""

    nx: int
    ny: int
    h: float
    ox: float = 0.0
    oy: float = 0.0

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("grid needs at least one cell per axis")
        if not self.h > 0.0:
            raise ValueError(f"cell size must be positive, got {self.h}")

    @classmethod
    def cover(cls, radius, n=512, pad=None):
        """Origin-centered n-by-n grid whose inscribed disk covers radius.

        The margin rule: the half extent is the circumradius about the
        origin times `pad`, so rotations and symmetrization keep content
        inside the grid (a symmetral of a subset of B(o, r) stays inside
        B(o, r)). The default pad guarantees roughly a dozen margin
        cells even on coarse grids, which absorbs the low-occupancy
        fringe that resampling spreads around the content.
        """
        if radius <= 0.0:
            raise ValueError("content radius must be positive")
        if pad is None:
            pad = 1.0 + max(0.10, 32.0 / n)
        half = radius * pad
        return cls(nx=n, ny=n, h=2.0 * half / n)

    @property
    def half_width(self):
        return 0.5 * self.nx * self.h

    @property
    def half_height(self):
        return 0.5 * self.ny * self.h

    def x_centers(self):
        return self.ox + (np.arange(self.nx) - (self.nx - 1) / 2.0) * self.h

    def y_centers(self):
        return self.oy + (np.arange(self.ny) - (self.ny - 1) / 2.0) * self.h

    def x_edges(self):
        return self.ox + (np.arange(self.nx + 1) - self.nx / 2.0) * self.h

    def y_edges(self):
        return self.oy + (np.arange(self.ny + 1) - self.ny / 2.0) * self.h

    def same_geometry(self, other, tol=1e-9):
        return (
            self.nx == other.nx
            and self.ny == other.ny
            and abs(self.h - other.h) <= tol * self.h
            and abs(self.ox - other.ox) <= tol * self.h
            and abs(self.oy - other.oy) <= tol * self.h
        )


class RasterSet:
    """Occupancy fractions on a GridSpec; row index grows with y."""

    __slots__ = ("occ", "grid")

    def __init__(self, occ, grid):
        occ = np.asarray(occ, dtype=float)
        if occ.shape != (grid.ny, grid.nx):
            raise ValueError(
                f"occupancy shape {occ.shape} does not match grid "
                f"({grid.ny}, {grid.nx})"
            )
        if not np.all(np.isfinite(occ)):
            raise ValueError("occupancy must be finite")
        lo, hi = float(occ.min()), float(occ.max())
        if lo < -1e-9 or hi > 1.0 + 1e-9:
            raise ValueError(f"occupancy out of [0, 1]: min {lo}, max {hi}")
        self.occ = np.clip(occ, 0.0, 1.0)
        self.grid = grid

    def __repr__(self):
        g = self.grid
        return f"RasterSet({g.nx}x{g.ny}, h={g.h:.6g}, area={self.area():.6g})"

    @property
    def h(self):
        return self.grid.h

    def mass(self):
        return float(self.occ.sum())

    def area(self):
        return self.mass() * self.grid.h**2

    def content_radius(self, cutoff=1e-15):
        """Largest distance from the origin to the far corner of an occupied cell."""
        mask = self.occ > cutoff
        if not mask.any():
            return 0.0
        xs = self.grid.x_centers()
        ys = self.grid.y_centers()
        half = 0.5 * self.grid.h
        rad = np.hypot(
            np.abs(xs)[None, :] + half, np.abs(ys)[:, None] + half
        )
        return float(rad[mask].max())

    def with_occ(self, occ):
        return RasterSet(occ, self.grid)


# ---------------------------------------------------------------------------
# rasterization
# ---------------------------------------------------------------------------


def _disk_fraction(grid, radius):
    """Per-cell covered fraction of the origin-centered disk.

    Cells entirely inside or outside are decided from corner distances;
    the boundary band is supersampled on a DISK_SUPERSAMPLES**2 lattice
    of subcell midpoints.
    """
    if radius <= 0.0:
        return np.zeros((grid.ny, grid.nx))
    xs = grid.x_centers()
    ys = grid.y_centers()
    half = 0.5 * grid.h
    ax = np.abs(xs)[None, :]
    ay = np.abs(ys)[:, None]
    near = np.hypot(np.maximum(ax - half, 0.0), np.maximum(ay - half, 0.0))
    far = np.hypot(ax + half, ay + half)
    occ = np.zeros((grid.ny, grid.nx))
    occ[far <= radius] = 1.0
    partial = (near < radius) & (far > radius)
    if partial.any():
        ii, jj = np.nonzero(partial)
        k = DISK_SUPERSAMPLES
        off = (np.arange(k) + 0.5) / k * grid.h - half
        px = xs[jj][:, None, None] + off[None, None, :]
        py = ys[ii][:, None, None] + off[None, :, None]
        inside = (px * px + py * py) <= radius * radius
        occ[ii, jj] = inside.mean(axis=(1, 2))
    return occ


def _check_bbox(grid, xmin, xmax, ymin, ymax):
    if (
        xmin < grid.ox - grid.half_width
        or xmax > grid.ox + grid.half_width
        or ymin < grid.oy - grid.half_height
        or ymax > grid.oy + grid.half_height
    ):
        raise ValueError(
            "shape exceeds the grid: bounding box "
            f"[{xmin:.4g}, {xmax:.4g}] x [{ymin:.4g}, {ymax:.4g}] vs grid half "
            f"extents ({grid.half_width:.4g}, {grid.half_height:.4g})"
        )


def _clip_rect(pts, x0, x1, y0, y1):
    """Sutherland-Hodgman clip of a polygon (list of xy pairs) to a rectangle."""
    for fixed, keep_le, coord in (
        (x0, False, 0),
        (x1, True, 0),
        (y0, False, 1),
        (y1, True, 1),
    ):
        if not pts:
            return pts
        out = []
        n = len(pts)
        for i in range(n):
            cur = pts[i]
            nxt = pts[(i + 1) % n]
            c_in = cur[coord] <= fixed if keep_le else cur[coord] >= fixed
            n_in = nxt[coord] <= fixed if keep_le else nxt[coord] >= fixed
            if c_in:
                out.append(cur)
            if c_in != n_in:
                t = (fixed - cur[coord]) / (nxt[coord] - cur[coord])
                out.append(
                    (
                        cur[0] + t * (nxt[0] - cur[0]),
                        cur[1] + t * (nxt[1] - cur[1]),
                    )
                )
        pts = out
    return pts


def _poly_area(pts):
    if len(pts) < 3:
        return 0.0
    arr = np.asarray(pts)
    x, y = arr[:, 0], arr[:, 1]
    return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))


def _edge_cells(grid, p, q):
    """Indices (i, j) of the cells an edge passes through."""
    xe, ye = grid.x_edges(), grid.y_edges()
    ts = [0.0, 1.0]
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx != 0.0:
        t = (xe - p[0]) / dx
        ts.extend(t[(t > 0.0) & (t < 1.0)])
    if dy != 0.0:
        t = (ye - p[1]) / dy
        ts.extend(t[(t > 0.0) & (t < 1.0)])
    ts = np.unique(ts)
    mid = 0.5 * (ts[:-1] + ts[1:])
    mx = p[0] + mid * dx
    my = p[1] + mid * dy
    jj = np.clip(((mx - xe[0]) / grid.h).astype(int), 0, grid.nx - 1)
    ii = np.clip(((my - ye[0]) / grid.h).astype(int), 0, grid.ny - 1)
    return ii, jj


def _rasterize_polygon(poly, grid):
    v = poly.vertices
    _check_bbox(grid, v[:, 0].min(), v[:, 0].max(), v[:, 1].min(), v[:, 1].max())
    xe, ye = grid.x_edges(), grid.y_edges()

    # classify grid corners: inside the convex polygon or not
    p = v
    q = np.roll(v, -1, axis=0)
    gx = xe[None, :]
    gy = ye[:, None]
    inside = np.ones((grid.ny + 1, grid.nx + 1), dtype=bool)
    for k in range(len(v)):
        ex, ey = q[k, 0] - p[k, 0], q[k, 1] - p[k, 1]
        inside &= (ex * (gy - p[k, 1]) - ey * (gx - p[k, 0])) >= 0.0
    corner_count = (
        inside[:-1, :-1].astype(np.int8)
        + inside[:-1, 1:]
        + inside[1:, :-1]
        + inside[1:, 1:]
    )

    boundary = np.zeros((grid.ny, grid.nx), dtype=bool)
    for k in range(len(v)):
        ii, jj = _edge_cells(grid, p[k], q[k])
        boundary[ii, jj] = True
    partial = boundary | ((corner_count > 0) & (corner_count < 4))

    occ = np.zeros((grid.ny, grid.nx))
    occ[(corner_count == 4) & ~partial] = 1.0

    cell_area = grid.h**2
    verts = [tuple(row) for row in v]
    for i, j in zip(*np.nonzero(partial)):
        clipped = _clip_rect(verts, xe[j], xe[j + 1], ye[i], ye[i + 1])
        occ[i, j] = min(1.0, _poly_area(clipped) / cell_area)
    return occ


def rasterize(shape, grid):
    """Exact-coverage raster of a convex polygon or an origin ball.

    Polygon cells are clipped exactly; disk boundary cells use subcell
    supersampling (see _disk_fraction).
    """
    if isinstance(shape, ConvexPolygon):
        return RasterSet(_rasterize_polygon(shape, grid), grid)
    if isinstance(shape, Ball):
        r = shape.radius
        _check_bbox(grid, -r, r, -r, r)
        return RasterSet(_disk_fraction(grid, r), grid)
    raise TypeError(f"cannot rasterize {type(shape).__name__}")


def annulus_fixture(r_inner, r_outer, grid):
    """Raster of the annulus r_inner <= |x| <= r_outer about the origin."""
    if not 0.0 <= r_inner < r_outer:
        raise ValueError(
            f"need 0 <= r_inner < r_outer, got ({r_inner}, {r_outer})"
        )
    _check_bbox(grid, -r_outer, r_outer, -r_outer, r_outer)
    occ = _disk_fraction(grid, r_outer) - _disk_fraction(grid, r_inner)
    return RasterSet(np.clip(occ, 0.0, 1.0), grid)


# ---------------------------------------------------------------------------
# resampling and rearrangement
# ---------------------------------------------------------------------------


def _bilinear_gather(occ, fi, fj):
    """Sample occ at fractional row/col coordinates; outside reads zero.

    The source is placed inside a zero border so out-of-range taps read
    zero without per-tap masking.
    """
    ny, nx = occ.shape
    padded = np.zeros((ny + 3, nx + 3))
    padded[1 : ny + 1, 1 : nx + 1] = occ
    fi = np.clip(fi, -1.0, float(ny)) + 1.0
    fj = np.clip(fj, -1.0, float(nx)) + 1.0
    i0 = np.floor(fi).astype(np.int64)
    j0 = np.floor(fj).astype(np.int64)
    di = fi - i0
    dj = fj - j0
    stride = nx + 3
    base = i0 * stride + j0
    flat = padded.ravel()
    v00 = flat[base]
    v01 = flat[base + 1]
    v10 = flat[base + stride]
    v11 = flat[base + stride + 1]
    return (
        (1.0 - di) * ((1.0 - dj) * v00 + dj * v01)
        + di * ((1.0 - dj) * v10 + dj * v11)
    )


def _pull_linear(occ, grid, matrix):
    """Resample under the world map p -> matrix @ p (about the origin)."""
    xs = grid.x_centers()
    ys = grid.y_centers()
    tx = xs[None, :]
    ty = ys[:, None]
    inv = np.linalg.inv(matrix)
    sx = inv[0, 0] * tx + inv[0, 1] * ty
    sy = inv[1, 0] * tx + inv[1, 1] * ty
    fj = (sx - grid.ox) / grid.h + (grid.nx - 1) / 2.0
    fi = (sy - grid.oy) / grid.h + (grid.ny - 1) / 2.0
    return np.clip(_bilinear_gather(occ, fi, fj), 0.0, 1.0)


def _linear_map_pull(rs, matrix):
    return _pull_linear(rs.occ, rs.grid, matrix)


def _center_out_order(n):
    """Cell indices ordered by distance from the grid midline, positive side first."""
    idx = np.arange(n)
    center = (n - 1) / 2.0
    dist = np.abs(idx - center)
    prefer = (idx < center).astype(int)  # 0 sorts first: positive side wins ties
    return np.lexsort((prefer, dist))


def _rearrange_columns(occ):
    """Exact symmetric decreasing rearrangement of every column."""
    order = _center_out_order(occ.shape[0])
    ranked = np.sort(occ, axis=0)[::-1, :]
    out = np.empty_like(occ)
    out[order, :] = ranked
    return out


def _match_mass(occ, target):
    """Rescale occupancy by one global factor so the mass equals target.

    Scaling down is a plain multiplication. Scaling up clips at 1, so
    the factor solves sum(min(s * occ, 1)) == target exactly: with the
    k largest values saturated the mass is linear in s, and the right k
    is found from the sorted values.
    """
    occ = np.clip(occ, 0.0, 1.0)
    if target <= 0.0:
        return np.zeros_like(occ)
    m = occ.sum()
    if m <= 0.0:
        raise ValueError("cannot renormalize an empty raster to positive mass")
    if m >= target:
        return occ * (target / m)
    vals = np.sort(occ[occ > 0.0])[::-1]
    if target >= len(vals):
        raise ValueError("target mass exceeds the occupied capacity of the grid")
    prefix = np.concatenate([[0.0], np.cumsum(vals)])
    ks = np.arange(len(vals))
    remaining = prefix[-1] - prefix[ks]
    with np.errstate(divide="ignore", invalid="ignore"):
        scales = (target - ks) / remaining
    # with k cells saturated the scale is valid when the k-th largest value
    # clips (s * vals[k-1] >= 1) while the next one does not
    lower_ok = np.concatenate([[True], scales[1:] * vals[:-1] >= 1.0 - 1e-12])
    upper_ok = scales * vals <= 1.0 + 1e-12
    valid = np.nonzero(lower_ok & upper_ok & (scales >= 1.0 - 1e-12))[0]
    if len(valid) == 0:
        raise ValueError("mass renormalization failed to bracket a scale factor")
    s = float(scales[valid[0]])
    return np.minimum(occ * s, 1.0)


def _require_centered(rs, op):
    g = rs.grid
    if abs(g.ox) > 1e-9 * g.h or abs(g.oy) > 1e-9 * g.h:
        raise ValueError(f"{op} requires a grid centered at the origin")


def steiner_raster(rs, direction, report=False):
    """Symmetral of a raster set with respect to a direction.

    Axis-aligned directions are exact value permutations. Otherwise the
    grid is resampled so the direction is column-aligned, every column
    is rearranged about the row of the origin line, the grid is
    resampled back, and the occupancy is rescaled so the mass equals the
    input mass. With report=True returns (result, info) where info
    carries the relative mass drift absorbed by the final rescale.
    """
    theta = as_theta(direction)
    _require_centered(rs, "symmetrization")
    mass0 = rs.mass()
    info = {"mass_drift": 0.0, "resampled": False}

    mod = math.fmod(theta, math.pi)
    if mod < 0.0:
        mod += math.pi
    if abs(mod - 0.5 * math.pi) <= 1e-12:
        out = _rearrange_columns(rs.occ)
    elif mod <= 1e-12 or math.pi - mod <= 1e-12:
        out = _rearrange_columns(rs.occ.T).T
    else:
        grid = rs.grid
        margin = 1.5 * grid.h
        limit = min(grid.half_width, grid.half_height)
        # the check watches substantive occupancy; the thin skirt that
        # resampling spreads below the cutoff may clip at the border and
        # is absorbed harmlessly by the final renormalization
        radius = rs.content_radius(cutoff=1e-2)
        if radius > limit - margin:
            raise ValueError(
                f"content radius {radius:.4g} too close to the grid edge "
                f"({limit:.4g}); rebuild on a larger grid"
            )
        phi = 0.5 * math.pi - theta
        c, s = math.cos(phi), math.sin(phi)
        fwd = np.array([[c, -s], [s, c]])
        back = np.array([[c, s], [-s, c]])
        aligned = _linear_map_pull(rs, fwd)
        rearranged = _rearrange_columns(aligned)
        out = _linear_map_pull(rs.with_occ(rearranged), back)
        out[out < DUST_FLOOR] = 0.0  # keeps the fringe from creeping outward
        info["resampled"] = True
        drift = (out.sum() - mass0) / mass0 if mass0 > 0 else 0.0
        info["mass_drift"] = float(drift)
    out = _match_mass(out, mass0)
    result = rs.with_occ(out)
    if report:
        return result, info
    return result


def reflect_raster(rs, direction):
    """Reflect across the line through the origin orthogonal to `direction`."""
    theta = as_theta(direction)
    _require_centered(rs, "reflection")
    mod = math.fmod(theta, math.pi)
    if mod < 0.0:
        mod += math.pi
    if abs(mod - 0.5 * math.pi) <= 1e-12:
        return rs.with_occ(rs.occ[::-1, :].copy())  # u vertical: flip y
    if mod <= 1e-12 or math.pi - mod <= 1e-12:
        return rs.with_occ(rs.occ[:, ::-1].copy())  # u horizontal: flip x
    ux, uy = math.cos(theta), math.sin(theta)
    mat = np.array([[1.0 - 2.0 * ux * ux, -2.0 * ux * uy],
                    [-2.0 * ux * uy, 1.0 - 2.0 * uy * uy]])
    return rs.with_occ(_linear_map_pull(rs, mat))


def resample_to(rs, grid):
    """Bilinear resample of a raster onto another grid (no rotation)."""
    xs = grid.x_centers()
    ys = grid.y_centers()
    src = rs.grid
    fj = (xs[None, :] - src.ox) / src.h + (src.nx - 1) / 2.0
    fi = (ys[:, None] - src.oy) / src.h + (src.ny - 1) / 2.0
    fj = np.broadcast_to(fj, (grid.ny, grid.nx))
    fi = np.broadcast_to(fi, (grid.ny, grid.nx))
    occ = np.clip(_bilinear_gather(rs.occ, fi, fj), 0.0, 1.0)
    scale = (src.h / grid.h) ** 2
    if abs(scale - 1.0) > 1e-12:
        # different cell sizes change the mass-to-area ratio; keep the area
        occ = _match_mass(occ, rs.mass() * scale)
    return RasterSet(occ, grid)


class AlignedRun:
    """Incremental driver for long composed symmetrizations of one raster.

    The occupancy is kept in the frame where the most recent direction
    is vertical; each step rotates by the relative angle between
    consecutive directions, so a composition step costs one resample
    instead of two and accumulates half the blur. Functionals that only
    depend on distances from the origin (area, second moment, distance
    to the centered ball) can be read off the frame raster directly; the
    world-frame raster is materialized on demand.
    """

    def __init__(self, rs):
        _require_centered(rs, "symmetrization")
        self.grid = rs.grid
        self.occ = rs.occ.copy()
        self.frame = 0.0  # world-to-frame rotation angle
        self.target_mass = rs.mass()

    def _check_margin(self):
        # substantive occupancy must stay off the border; the low skirt
        # may clip there and is restored by the mass renormalization
        grid = self.grid
        limit = min(grid.half_width, grid.half_height) - 1.5 * grid.h
        radius = self.frame_raster().content_radius(cutoff=1e-2)
        if radius > limit:
            raise ValueError(
                f"content radius {radius:.4g} too close to the grid edge; "
                "rebuild on a larger grid"
            )

    def apply(self, direction):
        theta = as_theta(direction)
        target = 0.5 * math.pi - theta
        delta = math.remainder(target - self.frame, 2.0 * math.pi)
        occ = self.occ
        if delta != 0.0:
            self._check_margin()
            c, s = math.cos(delta), math.sin(delta)
            occ = _pull_linear(occ, self.grid, np.array([[c, -s], [s, c]]))
        occ = _rearrange_columns(occ)
        occ[occ < DUST_FLOOR] = 0.0
        self.occ = _match_mass(occ, self.target_mass)
        self.frame = target
        return self

    def frame_raster(self):
        return RasterSet(self.occ, self.grid)

    def world_raster(self):
        delta = math.remainder(-self.frame, 2.0 * math.pi)
        if delta == 0.0:
            return self.frame_raster()
        c, s = math.cos(delta), math.sin(delta)
        occ = _pull_linear(self.occ, self.grid, np.array([[c, -s], [s, c]]))
        occ[occ < DUST_FLOOR] = 0.0
        return RasterSet(_match_mass(occ, self.target_mass), self.grid)

    def reflection_defect(self):
        """d1 between the set and its reflection across the line
        orthogonal to the last applied direction; exact in this frame
        (the direction is vertical, so the reflection is a row flip)."""
        return float(np.abs(self.occ - self.occ[::-1, :]).sum() * self.grid.h**2)


# ---------------------------------------------------------------------------
# PGM input/output
# ---------------------------------------------------------------------------

_META_RE = re.compile(
    rb"#\s*cellsize=([0-9.eE+-]+)\s+ox=([0-9.eE+-]+)\s+oy=([0-9.eE+-]+)"
)


def write_pgm(path, rs, binary=True):
    """Write a raster as PGM, maxval 65535, top row first.

    The world geometry travels in a comment line:
    ``# cellsize=<h> ox=<ox> oy=<oy>``.
    """
    g = rs.grid
    vals = np.rint(rs.occ[::-1, :] * PGM_MAXVAL).astype(np.uint16)
    header = (
        f"{'P5' if binary else 'P2'}\n"
        f"# cellsize={g.h:.15g} ox={g.ox:.15g} oy={g.oy:.15g}\n"
        f"{g.nx} {g.ny}\n{PGM_MAXVAL}\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if binary:
            fh.write(vals.astype(">u2").tobytes())
        else:
            for row in vals:
                fh.write((" ".join(str(v) for v in row) + "\n").encode("ascii"))


def read_pgm(path):
    """Read a P2 or P5 PGM written by write_pgm (or any plain grayscale PGM).

    Without the geometry comment the grid defaults to cell size 1,
    centered at the origin.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] not in (b"P2", b"P5"):
        raise ValueError(f"{path}: not a P2/P5 PGM file")
    binary = data[:2] == b"P5"
    meta = _META_RE.search(data[: min(len(data), 4096)])
    h, ox, oy = (1.0, 0.0, 0.0)
    if meta:
        h, ox, oy = (float(meta.group(k)) for k in (1, 2, 3))

    # tokenize the header: magic, width, height, maxval (comments stripped)
    pos = 2
    tokens = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            nl = data.find(b"\n", pos)
            pos = len(data) if nl < 0 else nl + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    nx, ny, maxval = (int(t) for t in tokens)
    if binary:
        pos += 1  # single whitespace after maxval
        dtype = ">u2" if maxval > 255 else np.uint8
        vals = np.frombuffer(data, dtype=dtype, count=nx * ny, offset=pos)
    else:
        vals = np.array(data[pos:].split(), dtype=np.int64)
        if len(vals) != nx * ny:
            raise ValueError(f"{path}: expected {nx * ny} samples, got {len(vals)}")
    occ = vals.reshape(ny, nx).astype(float)[::-1, :] / maxval
    return RasterSet(occ, GridSpec(nx=nx, ny=ny, h=h, ox=ox, oy=oy))
