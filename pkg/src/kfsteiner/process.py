"""Drive composed symmetrizations T_k = S(x_k) ... S(x_1) over a seed set.

A run is fully determined by its configuration: the direction sequence,
the seed (builtin fixture or file), the step count, and the recording
cadence. Polygon seeds use the exact chord backend; raster seeds use
the occupancy-grid backend. Checkpoint probing verifies that at the
enumerated checkpoint steps the applied direction is pi * gamma**k and
measures the reflection defect of the current set about that line.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import metrics as _metrics
from .polygons import (
    ConvexPolygon,
    load_polygon,
    regular_polygon,
    steiner_polygon,
    symmetry_defect,
)
from .rasters import (
    AlignedRun,
    GridSpec,
    RasterSet,
    _disk_fraction,
    annulus_fixture,
    rasterize,
    read_pgm,
)
from .sequences import GAMMA, checkpoint_index, parse_sequence_id, sequence_values

__all__ = [
    "ProcessConfig",
    "TraceRecord",
    "ProcessResult",
    "CheckpointRecord",
    "BUILTIN_SEEDS",
    "builtin_seed",
    "load_seed",
    "run_process",
    "checkpoint_probe",
    "compare_sequences",
    "trace_csv",
    "compare_csv",
]

BUILTIN_SEEDS = (
    "square",
    "offset-square",
    "ellipse",
    "lshape",
    "two-component",
    "annulus",
)


@dataclass(frozen=True)
class ProcessConfig:
    """Everything that determines a run; no hidden state."""

    sequence: str
    seed: str
    steps: int
    cadence: int = 1
    resolution: int = 512
    grid: GridSpec | None = None
    with_hausdorff: bool = False
    with_perimeter: bool = False

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.cadence < 1:
            raise ValueError(f"cadence must be >= 1, got {self.cadence}")


@dataclass(frozen=True)
class TraceRecord:
    """One recorded step: the applied value/angle and the diagnostics."""

    step: int
    x: float | None
    theta: float | None
    metrics: _metrics.MetricsRecord


@dataclass(frozen=True)
class ProcessResult:
    final: object
    records: tuple
    snapshots: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CheckpointRecord:
    order: int
    step: int
    theta: float
    defect: float


def builtin_seed(name, resolution=512, grid=None):
    """Construct one of the builtin seed fixtures.

    Polygon seeds: square (centered unit square), offset-square
    (unit square centered at (0.4, 0.3)), ellipse (2:1 polygon).
    Raster seeds: lshape, two-component, annulus; these are rasterized
    on an origin-centered grid sized to the seed's circumradius.
    """
    if name == "square":
        return ConvexPolygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)])
    if name == "offset-square":
        return ConvexPolygon(
            [(-0.1, -0.2), (0.9, -0.2), (0.9, 0.8), (-0.1, 0.8)]
        )
    if name == "ellipse":
        ang = 2.0 * math.pi * np.arange(128) / 128
        return ConvexPolygon(
            np.column_stack([0.64 * np.cos(ang), 0.32 * np.sin(ang)])
        )
    if name == "lshape":
        g = grid or GridSpec.cover(math.sqrt(0.5), n=resolution)
        a = rasterize(
            ConvexPolygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.0), (-0.5, 0.0)]), g
        )
        b = rasterize(
            ConvexPolygon([(-0.5, 0.0), (0.0, 0.0), (0.0, 0.5), (-0.5, 0.5)]), g
        )
        return RasterSet(np.clip(a.occ + b.occ, 0.0, 1.0), g)
    if name == "two-component":
        g = grid or GridSpec.cover(0.85, n=resolution)
        left = rasterize(regular_polygon(0.28, 96, center=(-0.55, 0.0)), g)
        right = rasterize(regular_polygon(0.28, 96, center=(0.55, 0.0)), g)
        return RasterSet(np.clip(left.occ + right.occ, 0.0, 1.0), g)
    if name == "annulus":
        g = grid or GridSpec.cover(0.8, n=resolution)
        return annulus_fixture(0.45, 0.8, g)
    raise ValueError(
        f"unknown builtin seed {name!r}; available: {', '.join(BUILTIN_SEEDS)}"
    )


def load_seed(spec, resolution=512, grid=None):
    """Resolve a seed spec: ``builtin:NAME``, a PGM path, or a polygon file."""
    if spec.startswith("builtin:"):
        return builtin_seed(spec[len("builtin:") :], resolution=resolution, grid=grid)
    if spec.endswith(".pgm"):
        return read_pgm(spec)
    return load_polygon(spec)


def run_process(cfg, snapshot_steps=(), callback=None):
    """Run the composed symmetrization described by `cfg`.

    Metrics are recorded at step 0, every `cadence` steps, and at the
    final step. `snapshot_steps` asks for world-frame copies of the
    evolving set at those step numbers (returned in
    ProcessResult.snapshots); `callback` is invoked as
    callback(step, set) at every recorded step.

    Raster seeds run through AlignedRun, which keeps the grid in the
    frame of the last direction between steps; the recorded functionals
    are invariant under that frame rotation.
    """
    seq = parse_sequence_id(cfg.sequence)
    xs = sequence_values(seq, cfg.steps)
    seed = load_seed(cfg.seed, resolution=cfg.resolution, grid=cfg.grid)

    ball_occ = None
    driver = None
    if isinstance(seed, RasterSet):
        r = math.sqrt(seed.area() / math.pi)
        ball_occ = _disk_fraction(seed.grid, r)
        driver = AlignedRun(seed)

    wanted = set(int(s) for s in snapshot_steps)
    snapshots = {}
    records = []
    current = seed

    def _measurable():
        return driver.frame_raster() if driver is not None else current

    def _worldly():
        return driver.world_raster() if driver is not None else current

    def _record(step, x, theta):
        rec = _metrics.measure(
            _measurable(),
            with_hausdorff=cfg.with_hausdorff,
            with_perimeter=cfg.with_perimeter,
            ball_occ=ball_occ,
        )
        records.append(TraceRecord(step=step, x=x, theta=theta, metrics=rec))
        if callback is not None:
            callback(step, _worldly())

    _record(0, None, None)
    if 0 in wanted:
        snapshots[0] = _worldly()
    for k in range(1, cfg.steps + 1):
        x = float(xs[k - 1])
        theta = math.pi * x
        if driver is not None:
            driver.apply(theta)
        else:
            current = steiner_polygon(current, theta)
        if k in wanted:
            snapshots[k] = _worldly()
        if k % cfg.cadence == 0 or k == cfg.steps:
            _record(k, x, theta)
    return ProcessResult(final=_worldly(), records=tuple(records),
                         snapshots=snapshots)


def checkpoint_probe(cfg, tol=1e-12):
    """Verify checkpoint directions and measure reflection defects.

    Only meaningful for the golden-ratio sequence: at the enumerated
    checkpoint steps the applied value is gamma**k, so the freshly
    symmetrized set should be symmetric about the line orthogonal to
    that direction. The defect is the vertex mismatch (polygon) or the
    d1 distance to the reflected set (raster, measured exactly in the
    aligned frame).
    """
    seq = parse_sequence_id(cfg.sequence)
    if seq.kind != "kf":
        raise ValueError("checkpoint probing requires the kf sequence")
    xs = sequence_values(seq, cfg.steps)
    probe_steps = {}
    k = 1
    while True:
        p = checkpoint_index(k)
        if p > cfg.steps:
            break
        probe_steps[p] = k
        k += 1
    for p, order in probe_steps.items():
        if abs(float(xs[p - 1]) - GAMMA**order) > tol:
            raise AssertionError(
                f"checkpoint {order}: value at step {p} is {xs[p - 1]!r}, "
                f"expected gamma**{order}"
            )

    seed = load_seed(cfg.seed, resolution=cfg.resolution, grid=cfg.grid)
    driver = AlignedRun(seed) if isinstance(seed, RasterSet) else None
    current = seed
    out = []
    for step in range(1, max(probe_steps) + 1):
        theta = math.pi * float(xs[step - 1])
        if driver is not None:
            driver.apply(theta)
        else:
            current = steiner_polygon(current, theta)
        if step in probe_steps:
            order = probe_steps[step]
            if driver is not None:
                defect = driver.reflection_defect()
            else:
                defect = symmetry_defect(current, theta)
            out.append(
                CheckpointRecord(
                    order=order, step=step, theta=math.pi * GAMMA**order,
                    defect=defect,
                )
            )
    return out


def _run_one(cfg):
    return run_process(cfg)


def compare_sequences(seed, sequence_ids, steps, cadence=1, resolution=512,
                      jobs=1, with_perimeter=False):
    """Run several sequences on the same seed and align their traces.

    Returns (ids, rows) where each row is a dict with the step and, per
    sequence id, that run's d1_to_ball and mu values.
    """
    ids = list(sequence_ids)
    if len(ids) < 2:
        raise ValueError("need at least two sequence ids to compare")
    cfgs = [
        ProcessConfig(
            sequence=sid,
            seed=seed,
            steps=steps,
            cadence=cadence,
            resolution=resolution,
            with_perimeter=with_perimeter,
        )
        for sid in ids
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, cfgs))
    else:
        results = [_run_one(c) for c in cfgs]
    steps_axis = [rec.step for rec in results[0].records]
    rows = []
    for i, step in enumerate(steps_axis):
        row = {"step": step}
        for sid, res in zip(ids, results):
            rec = res.records[i]
            row[f"d1_to_ball:{sid}"] = rec.metrics.d1_to_ball
            row[f"mu:{sid}"] = rec.metrics.mu
        rows.append(row)
    return ids, rows


# ---------------------------------------------------------------------------
# CSV rendering (15 significant digits, blank for missing)
# ---------------------------------------------------------------------------


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.15g}"


def trace_csv(records):
    lines = ["step,x,theta,area,mu,d1_to_ball,hausdorff,perimeter"]
    for rec in records:
        m = rec.metrics
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    rec.step,
                    rec.x,
                    rec.theta,
                    m.area,
                    m.mu,
                    m.d1_to_ball,
                    m.hausdorff_to_ball,
                    m.perimeter,
                )
            )
        )
    return "\n".join(lines) + "\n"


def compare_csv(ids, rows):
    cols = ["step"]
    for sid in ids:
        cols.extend([f"d1_to_ball:{sid}", f"mu:{sid}"])
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in cols))
    return "\n".join(lines) + "\n"
