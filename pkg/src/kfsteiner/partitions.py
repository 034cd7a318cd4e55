"""Kakutani splitting of partitions of the unit interval.

A refinement step splits every interval of maximal length at the point
dividing it in proportion alpha : (1 - alpha). For alpha equal to the
inverse golden ratio the interval lengths at level n take exactly the
two values gamma**n and gamma**(n+1) and the interval counts follow the
Fibonacci numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import GAMMA

__all__ = [
    "Partition",
    "TRIVIAL",
    "alpha_refine",
    "kakutani_level",
    "interval_counts",
    "ud_ratio",
]

#: Relative tolerance for deciding which intervals tie for the maximum length.
TIE_REL_TOL = 1e-12

#: Absolute floor for the tie tolerance. Breakpoints live in [0, 1], so
#: lengths carry about 1e-16 of absolute noise regardless of how short
#: they are; without the floor, deep levels stop splitting all maximal
#: intervals. Reliable through roughly level 50 of the golden cascade.
TIE_ABS_TOL = 1e-13

#: Default cap on the interval count of a partition produced by refinement.
MAX_INTERVALS = 10_000_000


def _maximal_mask(lengths):
    lmax = lengths.max()
    return lengths >= lmax - max(TIE_REL_TOL * lmax, TIE_ABS_TOL)


@dataclass(frozen=True)
class Partition:
    """Sorted breakpoints of a partition of [0, 1], endpoints included."""

    breakpoints: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        if bp.ndim != 1 or len(bp) < 2:
            raise ValueError("a partition needs at least the two endpoints")
        if bp[0] != 0.0 or bp[-1] != 1.0:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if np.any(np.diff(bp) <= 0.0):
            raise ValueError("breakpoints must be strictly increasing")
        bp = bp.copy()
        bp.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)

    @property
    def lengths(self):
        return np.diff(self.breakpoints)

    @property
    def n_intervals(self):
        return len(self.breakpoints) - 1


TRIVIAL = Partition(np.array([0.0, 1.0]))


def alpha_refine(partition, alpha):
    """Split every longest interval of `partition` in proportion alpha : 1 - alpha.

    Intervals within a relative tolerance of the maximum length are all
    split in the same step, since exact ties drift apart in floating
    point.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    bp = partition.breakpoints
    lengths = np.diff(bp)
    split = _maximal_mask(lengths)
    new_points = bp[:-1][split] + alpha * lengths[split]
    return Partition(np.sort(np.concatenate([bp, new_points])))


def kakutani_level(alpha, n, max_intervals=MAX_INTERVALS):
    """n-fold refinement of the trivial partition of [0, 1]."""
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")
    part = TRIVIAL
    for _ in range(int(n)):
        n_split = int(np.count_nonzero(_maximal_mask(part.lengths)))
        if part.n_intervals + n_split > max_intervals:
            raise ValueError(
                f"refinement would exceed the cap of {max_intervals} intervals"
            )
        part = alpha_refine(part, alpha)
    return part


def interval_counts(partition, level, tol=1e-10):
    """Classify the intervals of a golden-ratio partition at the given level.

    Returns (t, l, s): total intervals, intervals of length GAMMA**level,
    and intervals of length GAMMA**(level + 1). Any interval matching
    neither length is an invariant violation and raises.
    """
    lengths = partition.lengths
    long_len = GAMMA**level
    short_len = GAMMA ** (level + 1)
    is_long = np.abs(lengths - long_len) <= tol
    is_short = np.abs(lengths - short_len) <= tol
    bad = ~(is_long | is_short)
    if np.any(bad):
        raise ValueError(
            f"interval of length {lengths[bad][0]!r} matches neither "
            f"gamma**{level} nor gamma**{level + 1}"
        )
    return int(len(lengths)), int(is_long.sum()), int(is_short.sum())


def length_classes(partition, rel_tol=1e-9):
    """Cluster the interval lengths, longest class first.

    Returns a list of (length, count) pairs; lengths within rel_tol of
    each other (relative to the maximum) fall into one class. Used for
    the generic long/short interval report, which is only meaningful
    when there are at most two classes.
    """
    lengths = np.sort(partition.lengths)[::-1]
    tol = lengths[0] * rel_tol
    classes = []
    start = 0
    for i in range(1, len(lengths) + 1):
        if i == len(lengths) or lengths[start] - lengths[i] > tol:
            classes.append((float(lengths[start:i].mean()), i - start))
            start = i
    return classes


def ud_ratio(partition, interval):
    """Fraction of the partition's intervals contained in [a, b]."""
    a, b = interval
    if not 0.0 <= a < b <= 1.0:
        raise ValueError(f"need 0 <= a < b <= 1, got ({a}, {b})")
    bp = partition.breakpoints
    lo = int(np.searchsorted(bp, a, side="left"))
    hi = int(np.searchsorted(bp, b, side="right")) - 1
    contained = max(0, hi - lo)
    return contained / partition.n_intervals
