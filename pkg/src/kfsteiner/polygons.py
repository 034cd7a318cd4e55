"""Convex polygons, balls, and the exact chord symmetral.

The symmetral is computed in a rotated frame where the chosen direction
is vertical. For a convex polygon the vertical chord length is a
concave piecewise-linear function of the horizontal coordinate, so the
output is the polygon bounded by plus/minus half that chord profile at
the same breakpoints, rotated back. Breakpoints whose removal changes
the area by less than a tiny fraction of the total are merged; without
the merge the vertex count would double with every application. The
result is rescaled about the origin so the area matches the input
exactly, which keeps long composition chains drift-free.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvexPolygon",
    "Ball",
    "ball_of_same_area",
    "regular_polygon",
    "steiner_polygon",
    "reflect_polygon",
    "convex_intersection_area",
    "disk_intersection_area",
    "ball_hausdorff",
    "symmetry_defect",
    "load_polygon",
    "save_polygon",
]

# Relative tolerance for the convexity test (cross products of
# consecutive edges may dip slightly negative at collinear vertices).
COLLINEAR_REL_TOL = 1e-9

# Areas below this are treated as degenerate input.
DEGENERATE_AREA = 1e-12

# A chord-profile breakpoint is merged when dropping it cuts less than
# this fraction of the polygon area. Small enough that a 200-step
# composition stays inside the 1e-9 area and moment contracts, large
# enough to keep the vertex count bounded (about 1e5 at saturation).
SIMPLIFY_AREA_FRACTION = 1e-13


def as_theta(direction):
    """Angle in radians from a DirectionAngle or a bare number."""
    theta = float(getattr(direction, "theta", direction))
    if math.isnan(theta):
        raise ValueError("direction angle is NaN")
    return theta


def _shoelace(v):
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


class ConvexPolygon:
    """Immutable convex polygon given by CCW vertices, shape (m, 2)."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("need at least 3 vertices of shape (m, 2)")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        span = float(np.ptp(v, axis=0).max())
        if span <= 0.0:
            raise ValueError("degenerate polygon with zero extent")
        edges = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(edges[:, 0], edges[:, 1]) <= 1e-12 * span):
            raise ValueError("repeated consecutive vertices")
        if _shoelace(v) <= 0.0:
            raise ValueError("vertices must be ordered counterclockwise")
        nxt = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
        if np.any(cross < -COLLINEAR_REL_TOL * span * span):
            raise ValueError("polygon is not convex")
        v.setflags(write=False)
        self.vertices = v

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"ConvexPolygon({len(self)} vertices, area={self.area():.6g})"

    def area(self):
        return _shoelace(self.vertices)

    def perimeter(self):
        edges = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(edges[:, 0], edges[:, 1]).sum())

    def moment_about_origin(self):
        """Integral of x**2 + y**2 over the polygon, exact.

        Sum over edges of the apex-triangle second moment about the
        origin: cross(p, q) * (|p|^2 + p.q + |q|^2) / 12.
        """
        p = self.vertices
        q = np.roll(p, -1, axis=0)
        cross = p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0]
        terms = (p * p).sum(axis=1) + (p * q).sum(axis=1) + (q * q).sum(axis=1)
        return float(np.sum(cross * terms) / 12.0)

    def circumradius(self):
        """Largest distance from the origin to a vertex."""
        return float(np.hypot(self.vertices[:, 0], self.vertices[:, 1]).max())

    def contains_origin(self):
        p = self.vertices
        q = np.roll(p, -1, axis=0)
        d = q - p
        return bool(np.all(d[:, 0] * -p[:, 1] - d[:, 1] * -p[:, 0] >= 0.0))

    def translated(self, dx, dy):
        return ConvexPolygon(self.vertices + np.array([dx, dy]))


@dataclass(frozen=True)
class Ball:
    """Disk of the given radius centered at the origin."""

    radius: float

    def __post_init__(self):
        if self.radius < 0.0:
            raise ValueError(f"radius must be nonnegative, got {self.radius}")

    @property
    def area(self):
        return math.pi * self.radius**2


def ball_of_same_area(area):
    """Origin-centered ball with the given area."""
    if area < 0.0:
        raise ValueError(f"area must be nonnegative, got {area}")
    return Ball(math.sqrt(area / math.pi))


def regular_polygon(radius, n=128, center=(0.0, 0.0)):
    """Regular n-gon inscribed in the circle of the given radius."""
    ang = 2.0 * math.pi * np.arange(n) / n
    cx, cy = center
    return ConvexPolygon(
        np.column_stack([cx + radius * np.cos(ang), cy + radius * np.sin(ang)])
    )


# ---------------------------------------------------------------------------
# chord profile and symmetral
# ---------------------------------------------------------------------------


def _chain_envelope(chain, span, take_min):
    """Collapse a monotone-x chain to strictly increasing x with min or max y."""
    x = chain[:, 0]
    y = chain[:, 1]
    new = np.empty(len(x), dtype=bool)
    new[0] = True
    new[1:] = np.diff(x) > 1e-12 * span
    starts = np.nonzero(new)[0]
    gx = x[starts]
    gy = np.minimum.reduceat(y, starts) if take_min else np.maximum.reduceat(y, starts)
    return gx, gy


def _chord_profile(v):
    """Breakpoints and vertical chord lengths of a convex polygon."""
    m = len(v)
    order = np.lexsort((v[:, 1], v[:, 0]))
    i_lo, i_hi = int(order[0]), int(order[-1])
    idx = (np.arange(m) + i_lo) % m
    vr = v[idx]
    j = int(np.nonzero(idx == i_hi)[0][0])
    lower = vr[: j + 1]
    upper = np.concatenate([vr[j:], vr[:1]])[::-1]

    xs = np.unique(v[:, 0])
    span = xs[-1] - xs[0]
    if span <= 0.0:
        raise ValueError("polygon collapses to a vertical segment in this frame")
    keep = np.empty(len(xs), dtype=bool)
    keep[0] = True
    keep[1:] = np.diff(xs) > 1e-12 * span
    xs = xs[keep]

    lo_x, lo_y = _chain_envelope(lower, span, take_min=True)
    up_x, up_y = _chain_envelope(upper, span, take_min=False)
    lo = np.interp(xs, lo_x, lo_y)
    up = np.interp(xs, up_x, up_y)
    return xs, np.maximum(up - lo, 0.0)


def _simplify_profile(xs, ell, eps_area):
    """Drop breakpoints whose removal cuts at most eps_area from the shape.

    Removals in one pass are never adjacent, so each cut is exactly the
    triangle against kept neighbors. Runs of droppable points thin out
    geometrically over passes.
    """
    for _ in range(64):
        if len(xs) <= 2:
            break
        x1, y1 = xs[:-2], ell[:-2]
        x2, y2 = xs[1:-1], ell[1:-1]
        x3, y3 = xs[2:], ell[2:]
        double_area = np.abs((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))
        removable = double_area <= 2.0 * eps_area
        if not removable.any():
            break
        pos = np.arange(removable.size)
        run_start = np.where(removable & np.r_[True, ~removable[:-1]], pos, -1)
        run_start = np.maximum.accumulate(run_start)
        take = removable & (((pos - run_start) % 2) == 0)
        keep = np.ones(len(xs), dtype=bool)
        keep[1:-1][take] = False
        xs = xs[keep]
        ell = ell[keep]
    return xs, ell


def _profile_polygon(xs, ell):
    """Polygon bounded by y = +/- ell(x)/2 over the breakpoints xs."""
    half = 0.5 * ell
    tiny = 1e-12 * max(float(half.max()), xs[-1] - xs[0])
    bottom = np.column_stack([xs, -half])
    top = np.column_stack([xs, half])[::-1]
    if half[-1] <= tiny:
        top = top[1:]  # coincides with the last bottom vertex
    if half[0] <= tiny:
        top = top[:-1]  # coincides with the first bottom vertex
    return np.concatenate([bottom, top])


def steiner_polygon(poly, direction):
    """Symmetral of a convex polygon with respect to a direction.

    Every chord parallel to the direction is recentered on the line
    through the origin orthogonal to it. Exact up to breakpoint merging
    below SIMPLIFY_AREA_FRACTION of the area; the output is rescaled
    about the origin so its area equals the input area.
    """
    theta = as_theta(direction)
    area0 = poly.area()
    if area0 < DEGENERATE_AREA:
        raise ValueError(f"degenerate polygon with area {area0!r}")
    phi = 0.5 * math.pi - theta
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, -s], [s, c]])
    v = poly.vertices @ rot.T
    xs, ell = _chord_profile(v)
    xs, ell = _simplify_profile(xs, ell, SIMPLIFY_AREA_FRACTION * area0)
    out = _profile_polygon(xs, ell) @ rot
    scale = math.sqrt(area0 / _shoelace(out))
    return ConvexPolygon(out * scale)


def reflect_polygon(poly, direction):
    """Reflect across the line through the origin orthogonal to `direction`."""
    theta = as_theta(direction)
    ux, uy = math.cos(theta), math.sin(theta)
    mat = np.array([[1.0 - 2.0 * ux * ux, -2.0 * ux * uy],
                    [-2.0 * ux * uy, 1.0 - 2.0 * uy * uy]])
    return ConvexPolygon((poly.vertices @ mat.T)[::-1])


def _directed_vertex_gap(a, b, window=32):
    """Max over rows of b of the distance to the nearest row of a.

    Candidates are limited to an x-sorted window, which is ample here:
    callers compare a polygon against its own reflection, where the
    nearest vertex shares the x coordinate up to rounding.
    """
    order = np.argsort(a[:, 0], kind="stable")
    ax = a[order]
    idx = np.searchsorted(ax[:, 0], b[:, 0])
    best = np.full(len(b), np.inf)
    for off in range(-window, window + 1):
        j = np.clip(idx + off, 0, len(ax) - 1)
        best = np.minimum(best, np.hypot(ax[j, 0] - b[:, 0], ax[j, 1] - b[:, 1]))
    return float(best.max())


def symmetry_defect(poly, direction):
    """Largest vertex displacement between the polygon and its reflection.

    Both directed nearest-vertex gaps are taken; for a polygon that is
    symmetric about the line orthogonal to `direction` the defect is
    floating-point noise.
    """
    a = poly.vertices
    b = reflect_polygon(poly, direction).vertices
    return max(_directed_vertex_gap(a, b), _directed_vertex_gap(b, a))


# ---------------------------------------------------------------------------
# exact intersection helpers
# ---------------------------------------------------------------------------


def convex_intersection_area(a, b):
    """Area of the intersection of two convex polygons (clip a by b)."""
    pts = [tuple(p) for p in a.vertices]
    clip = b.vertices
    for i in range(len(clip)):
        px, py = clip[i]
        qx, qy = clip[(i + 1) % len(clip)]
        ex, ey = qx - px, qy - py
        out = []
        n = len(pts)
        for j in range(n):
            cx, cy = pts[j]
            nx, ny = pts[(j + 1) % n]
            c1 = ex * (cy - py) - ey * (cx - px)
            c2 = ex * (ny - py) - ey * (nx - px)
            if c1 >= 0.0:
                out.append((cx, cy))
            if (c1 > 0.0 > c2) or (c1 < 0.0 < c2):
                t = c1 / (c1 - c2)
                out.append((cx + t * (nx - cx), cy + t * (ny - cy)))
        pts = out
        if len(pts) < 3:
            return 0.0
    arr = np.asarray(pts)
    return max(0.0, _shoelace(arr))


def disk_intersection_area(poly, radius):
    """Exact area of polygon intersected with the origin-centered disk.

    Green's theorem about the origin: each edge contributes the area of
    the apex triangle clipped to the disk, which splits into a circular
    sector, a straight part, and another sector.
    """
    if radius <= 0.0:
        return 0.0
    p = poly.vertices
    q = np.roll(p, -1, axis=0)
    d = q - p
    a = (d * d).sum(axis=1)
    b = (p * d).sum(axis=1)
    c = (p * p).sum(axis=1) - radius**2
    disc = b * b - a * c
    root = np.sqrt(np.maximum(disc, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        t0 = np.clip(np.where(a > 0.0, (-b - root) / a, 0.0), 0.0, 1.0)
        t1 = np.clip(np.where(a > 0.0, (-b + root) / a, 0.0), 0.0, 1.0)
    miss = disc <= 0.0
    t0 = np.where(miss, 0.0, t0)
    t1 = np.where(miss, 0.0, t1)
    entry = p + t0[:, None] * d
    exit_ = p + t1[:, None] * d

    def _sector(u, w):
        cross = u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]
        dot = (u * w).sum(axis=1)
        return 0.5 * radius**2 * np.arctan2(cross, dot)

    straight = 0.5 * (entry[:, 0] * exit_[:, 1] - entry[:, 1] * exit_[:, 0])
    total = _sector(p, entry) + straight + _sector(exit_, q)
    return float(np.sum(total))


def ball_hausdorff(poly, radius, n_fallback=2048):
    """Hausdorff distance between a convex polygon and an origin ball.

    For convex sets this is the largest gap between support functions.
    The maximum of the polygon support is the farthest vertex; when the
    origin is inside, the minimum is the closest edge line, so the value
    is exact. Otherwise the minimum is taken over sampled directions.
    """
    v = poly.vertices
    hi = float(np.hypot(v[:, 0], v[:, 1]).max())
    if poly.contains_origin():
        p = v
        q = np.roll(v, -1, axis=0)
        cross = p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0]
        lengths = np.hypot(*(q - p).T)
        lo = float((np.abs(cross) / lengths).min())
    else:
        ang = np.linspace(0.0, 2.0 * math.pi, n_fallback, endpoint=False)
        dirs = np.column_stack([np.cos(ang), np.sin(ang)])
        lo = float((v @ dirs.T).max(axis=0).min())
    return max(hi - radius, radius - lo, 0.0)


# ---------------------------------------------------------------------------
# plain-text polygon files
# ---------------------------------------------------------------------------


def load_polygon(path):
    """Read a polygon from a text file, one "x y" pair per line.

    Lines starting with '#' (or trailing '#' comments) are ignored.
    Clockwise input is reoriented with a warning.
    """
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}: expected 'x y' per line, got {raw!r}")
            rows.append((float(parts[0]), float(parts[1])))
    if len(rows) < 3:
        raise ValueError(f"{path}: need at least 3 vertices")
    v = np.asarray(rows)
    if _shoelace(v) < 0.0:
        warnings.warn(f"{path}: clockwise vertex order, reorienting to CCW")
        v = v[::-1]
    try:
        return ConvexPolygon(v)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def save_polygon(path, poly):
    """Write a polygon as plain text, one "x y" pair per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# convex polygon, CCW vertices, one 'x y' per line\n")
        for x, y in poly.vertices:
            fh.write(f"{x:.15g} {y:.15g}\n")
