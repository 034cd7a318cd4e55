"""Golden-ratio numeration and one-dimensional point sequences.

Admissible integers are the positive integers whose binary expansion has
no two adjacent ones. Mapping the k-th admissible integer through the
golden-ratio radical inverse (sum of gamma**(j+1) over its set bits)
yields the Kakutani-Fibonacci sequence of points in (0, 1). Van der
Corput and Kronecker sequences are provided for comparison, and a point
x in [0, 1] is turned into a planar direction via the angle pi * x.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GAMMA",
    "ENUMERATION_CAP",
    "DirectionAngle",
    "SequenceSpec",
    "fib",
    "is_admissible",
    "admissible_integers",
    "gamma_radical_inverse",
    "kf_point",
    "kf_points",
    "vdc_point",
    "vdc_points",
    "kronecker_point",
    "kronecker_points",
    "to_direction",
    "checkpoint_index",
    "parse_sequence_id",
    "sequence_values",
]

GAMMA = (math.sqrt(5.0) - 1.0) / 2.0
"""Inverse golden ratio, the root of 1 - g = g*g in (0, 1)."""

# Admissible integers are found by scanning upward and bit-testing.
# Python integers never overflow, so the cap only bounds scan cost;
# it allows roughly 5.7 million sequence points.
ENUMERATION_CAP = 1 << 32

# _GAMMA_POWERS[k] == GAMMA ** (k + 1)
_GAMMA_POWERS = np.cumprod(np.full(66, GAMMA))


def fib(n):
    """n-th Fibonacci number with F_0 = 0, F_1 = 1.

    Arbitrary-precision integers are used, so there is no overflow cap;
    n only has to be a nonnegative integer.
    """
    if n < 0:
        raise ValueError(f"fib requires n >= 0, got {n}")
    a, b = 0, 1
    for _ in range(int(n)):
        a, b = b, a + b
    return a


def is_admissible(n):
    """True iff the binary expansion of n >= 1 has no two adjacent ones."""
    n = int(n)
    if n < 1:
        raise ValueError(f"admissibility is defined for n >= 1, got {n}")
    return (n & (n >> 1)) == 0


class _AdmissibleCache:
    """Grow-on-demand sorted table of admissible integers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._values = np.empty(0, dtype=np.int64)
        self._scanned = 1  # every integer in [1, _scanned) is classified

    def ensure(self, count=0, value=0):
        with self._lock:
            while len(self._values) < count or self._scanned <= value:
                if self._scanned >= ENUMERATION_CAP:
                    raise ValueError(
                        "admissible-integer enumeration exceeds the cap "
                        f"2**32 (requested count={count}, value={value})"
                    )
                hi = min(max(2 * self._scanned, 1 << 14), ENUMERATION_CAP)
                block = np.arange(self._scanned, hi, dtype=np.int64)
                good = block[(block & (block >> 1)) == 0]
                self._values = np.concatenate([self._values, good])
                self._scanned = hi
            return self._values


_CACHE = _AdmissibleCache()


def admissible_integers(count):
    """First `count` admissible integers, in increasing order."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    return _CACHE.ensure(count=count)[:count].copy()


def _phi_gamma_array(ns):
    ns = np.asarray(ns, dtype=np.int64)
    out = np.zeros(len(ns))
    if len(ns) == 0:
        return out
    for k in range(int(ns.max()).bit_length()):
        out += _GAMMA_POWERS[k] * ((ns >> k) & 1)
    return out


def gamma_radical_inverse(n):
    """Golden-ratio radical inverse of an admissible integer.

    Returns sum over set bits k of GAMMA**(k+1), which lies strictly in
    (0, 1) exactly because no two bits are adjacent.
    """
    if not is_admissible(n):
        raise ValueError(f"{n} has adjacent ones in binary and is not admissible")
    n = int(n)
    total = 0.0
    k = 0
    while n:
        if n & 1:
            total += _GAMMA_POWERS[k]
        n >>= 1
        k += 1
    return total


def kf_points(count):
    """First `count` values of the golden-ratio splitting sequence."""
    return _phi_gamma_array(admissible_integers(count))


def kf_point(k):
    """k-th sequence value (k >= 1): radical inverse of the k-th admissible integer."""
    if k < 1:
        raise ValueError(f"sequence index must be >= 1, got {k}")
    vals = _CACHE.ensure(count=k)
    return gamma_radical_inverse(int(vals[k - 1]))


def checkpoint_index(k):
    """Sequence index where the value GAMMA**k first appears.

    Found by enumeration: GAMMA**k is the image of 2**(k-1), so the index
    is the position of 2**(k-1) among the admissible integers. Direct
    enumeration confirms this equals fib(k+1).
    """
    if k < 1:
        raise ValueError(f"checkpoint order must be >= 1, got {k}")
    target = 1 << (k - 1)
    if target >= ENUMERATION_CAP:
        raise ValueError(f"checkpoint order {k} exceeds the enumeration cap")
    vals = _CACHE.ensure(value=target)
    idx = int(np.searchsorted(vals, target))
    return idx + 1


def vdc_point(n, base=2):
    """Radical-inverse (digit reversal) value of n >= 1 in the given base."""
    n = int(n)
    base = int(base)
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    out = 0.0
    denom = float(base)
    while n:
        out += (n % base) / denom
        n //= base
        denom *= base
    return out


def vdc_points(count, base=2):
    """First `count` van der Corput values in the given base."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    idx = np.arange(1, count + 1, dtype=np.int64)
    out = np.zeros(count)
    denom = float(base)
    rem = idx.copy()
    while rem.any():
        out += (rem % base) / denom
        rem //= base
        denom *= base
    return out


def kronecker_point(n, alpha=GAMMA):
    """Fractional part of n * alpha."""
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    return math.fmod(n * alpha, 1.0)


def kronecker_points(count, alpha=GAMMA):
    """First `count` fractional parts of n * alpha."""
    return np.mod(np.arange(1, count + 1, dtype=float) * alpha, 1.0)


@dataclass(frozen=True)
class DirectionAngle:
    """Planar direction given by an angle in [0, pi]."""

    theta: float

    @property
    def vector(self):
        return (math.cos(self.theta), math.sin(self.theta))


def to_direction(x):
    """Map x in [0, 1] to the direction with angle pi * x."""
    x = float(x)
    if math.isnan(x) or not 0.0 <= x <= 1.0:
        raise ValueError(f"sequence value must lie in [0, 1], got {x}")
    return DirectionAngle(math.pi * x)


@dataclass(frozen=True)
class SequenceSpec:
    """Parsed description of a point-sequence generator."""

    kind: str
    base: int = 2
    alpha: float = GAMMA
    value: float = 0.5
    start: float = 0.5
    ratio: float = 0.9
    seed: int = 0
    path: str = ""


def _parse_alpha(text):
    if text.strip().lower() == "gamma":
        return GAMMA
    return float(text)


def parse_sequence_id(text):
    """Parse a compact generator id.

    Accepted forms: ``kf``, ``vdc`` / ``vdc2`` / ``vdc:3``,
    ``kronecker`` / ``kronecker:0.3`` / ``kronecker:gamma``,
    ``constant:0.4``, ``geomdecay:0.9:0.85``, ``random`` / ``random:7``,
    ``file:PATH``.
    """
    text = text.strip()
    if text.startswith("file:"):
        return SequenceSpec(kind="file", path=text[5:])
    head, _, rest = text.partition(":")
    head = head.lower()
    if head == "kf":
        return SequenceSpec(kind="kf")
    if head.startswith("vdc"):
        suffix = head[3:]
        base = int(rest) if rest else (int(suffix) if suffix else 2)
        return SequenceSpec(kind="vdc", base=base)
    if head == "kronecker":
        alpha = _parse_alpha(rest) if rest else GAMMA
        return SequenceSpec(kind="kronecker", alpha=alpha)
    if head == "constant":
        return SequenceSpec(kind="constant", value=float(rest) if rest else 0.5)
    if head == "geomdecay":
        parts = rest.split(":") if rest else []
        start = float(parts[0]) if len(parts) > 0 and parts[0] else 0.9
        ratio = float(parts[1]) if len(parts) > 1 else 0.9
        return SequenceSpec(kind="geomdecay", start=start, ratio=ratio)
    if head == "random":
        return SequenceSpec(kind="random", seed=int(rest) if rest else 0)
    raise ValueError(f"unknown sequence id {text!r}")


def _load_schedule(path):
    vals = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                vals.append(float(line))
    return np.asarray(vals)


def sequence_values(spec, count):
    """First `count` values of the generator described by `spec`.

    `spec` may be a SequenceSpec or a compact id string.
    """
    if isinstance(spec, str):
        spec = parse_sequence_id(spec)
    if count < 0:
        raise ValueError("count must be nonnegative")
    if spec.kind == "kf":
        return kf_points(count)
    if spec.kind == "vdc":
        return vdc_points(count, base=spec.base)
    if spec.kind == "kronecker":
        return kronecker_points(count, alpha=spec.alpha)
    if spec.kind == "constant":
        if not 0.0 <= spec.value <= 1.0:
            raise ValueError("constant schedule value must lie in [0, 1]")
        return np.full(count, float(spec.value))
    if spec.kind == "geomdecay":
        if not 0.0 <= spec.start <= 1.0 or not 0.0 < spec.ratio < 1.0:
            raise ValueError("geomdecay needs start in [0, 1] and ratio in (0, 1)")
        return spec.start * spec.ratio ** np.arange(count, dtype=float)
    if spec.kind == "random":
        return np.random.default_rng(spec.seed).random(count)
    if spec.kind == "file":
        vals = _load_schedule(spec.path)
        if len(vals) < count:
            raise ValueError(
                f"schedule file {spec.path!r} has {len(vals)} values, need {count}"
            )
        vals = vals[:count]
        if np.any((vals < 0.0) | (vals > 1.0)):
            raise ValueError(f"schedule file {spec.path!r} has values outside [0, 1]")
        return vals
    raise ValueError(f"unknown sequence kind {spec.kind!r}")
