"""Contractive similarity systems and limit-set point clouds.

A system is a finite list of maps z -> a*z + b with 0 < |a| < 1 together
with an open disk used for the open set condition.  Rendering is either the
full deterministic composition tree at a fixed depth, or a seeded chaos-game
orbit.  Clouds serialize to a small CSV format shared with the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadAddress,
    DegenerateCloud,
    EmptySystem,
    ExplosionGuard,
    InvalidC,
    RatioOutOfRange,
)

# Point sets agree when matched within this absolute tolerance.
DEDUP_TOL = 1e-12
# Chaos-game transient discarded before points are recorded.
CHAOS_BURN_IN = 100
# Hard cap on deterministic render size (n^depth points).
RENDER_GUARD = 10**8


@dataclass(frozen=True)
class Similarity:
    """z -> a*z + b with 0 < |a| < 1."""

    a: complex
    b: complex

    def __post_init__(self):
        r = abs(complex(self.a))
        if not 0.0 < r < 1.0:
            raise RatioOutOfRange(f"|a| = {r} not in (0, 1)")

    def __call__(self, z: complex) -> complex:
        return self.a * z + self.b

    @property
    def ratio(self) -> float:
        return abs(self.a)

    @property
    def fixed_point(self) -> complex:
        return self.b / (1.0 - self.a)


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"disk radius must be > 0, got {self.radius}")

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius


@dataclass(frozen=True)
class SimilarityIFS:
    maps: tuple
    open_set: Disk
    osc_verified: bool = False

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise EmptySystem("an IFS needs at least one map")
        object.__setattr__(self, "maps", maps)

    @property
    def ratios(self) -> tuple:
        return tuple(m.ratio for m in self.maps)


@dataclass
class PointCloud:
    """Finite sample of a limit set; immutable by convention."""

    points: np.ndarray  # complex128
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.complex128)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def xy(self) -> tuple:
        return self.points.real, self.points.imag


@dataclass(frozen=True)
class Deterministic:
    depth: int


@dataclass(frozen=True)
class ChaosGame:
    count: int
    seed: int


def similarity_dimension(ratios: Sequence[float], c: float = 1.0) -> float:
    """Root s of sum_j ratio_j^s = c, the generalized similarity dimension.

    The left side decreases from len(ratios) at s = 0 toward 0, so the root
    is unique when 0 < c < len(ratios) and is found by bisection to relative
    width 1e-12.  When c >= len(ratios) the feasible-set infimum is 0.
    """
    lo, hi = similarity_dimension_bracket(ratios, c)
    return 0.5 * (lo + hi)


def similarity_dimension_bracket(ratios: Sequence[float], c: float = 1.0) -> tuple:
    """Final bisection bracket (lo, hi) with a sign change across it."""
    rs = [float(r) for r in ratios]
    if not rs:
        raise EmptySystem("need at least one ratio")
    for r in rs:
        if not 0.0 < r < 1.0:
            raise RatioOutOfRange(f"ratio {r} not in (0, 1)")
    if c <= 0:
        raise InvalidC(f"c must be > 0, got {c}")
    if c >= len(rs):
        return (0.0, 0.0)

    def excess(s: float) -> float:
        return sum(r**s for r in rs) - c

    lo = 0.0
    hi = 1.0
    while excess(hi) > 0.0:
        lo = hi
        hi *= 2.0
    while hi - lo > 1e-12 * hi:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


@dataclass(frozen=True)
class OpenSetReport:
    passed: bool
    containment: tuple  # per map: (index, margin, ok)
    disjointness: tuple  # per pair: (i, j, margin, ok)

    def failures(self):
        bad = [f"map {i}: containment margin {m:.3g}" for i, m, ok in self.containment if not ok]
        bad += [f"maps ({i},{j}): overlap margin {m:.3g}" for i, j, m, ok in self.disjointness if not ok]
        return bad


def check_open_set_disks(ifs: SimilarityIFS) -> OpenSetReport:
    """Exact open-set-condition check for a disk open set.

    gamma(D(w, R)) = D(a*w + b, |a|R), so containment is
    |a*w + b - w| + |a|R <= R and disjointness of two images is a strict
    center-distance test against the sum of radii.
    """
    w0, big_r = ifs.open_set.center, ifs.open_set.radius
    images = [(m(w0), m.ratio * big_r) for m in ifs.maps]
    containment = tuple(
        (i, big_r - (abs(ctr - w0) + rad), abs(ctr - w0) + rad <= big_r)
        for i, (ctr, rad) in enumerate(images)
    )
    disjoint = []
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            gap = abs(images[i][0] - images[j][0]) - (images[i][1] + images[j][1])
            disjoint.append((i, j, gap, gap > 0.0))
    passed = all(ok for *_, ok in containment) and all(ok for *_, ok in disjoint)
    return OpenSetReport(passed, containment, tuple(disjoint))


def render_limit_set(ifs: SimilarityIFS, method) -> PointCloud:
    """Sample the limit set by the requested method.

    Deterministic: all n^depth images of the first map's fixed point (which
    lies in the limit set, so every rendered point does).  ChaosGame: a
    seeded random orbit with the first CHAOS_BURN_IN points discarded.
    """
    if isinstance(method, Deterministic):
        return _render_deterministic(ifs, method.depth)
    if isinstance(method, ChaosGame):
        return _render_chaos(ifs, method.count, method.seed)
    raise TypeError(f"unknown render method: {method!r}")


def _render_deterministic(ifs: SimilarityIFS, depth: int) -> PointCloud:
    n = len(ifs.maps)
    if depth < 0:
        raise ExplosionGuard(f"depth must be >= 0, got {depth}")
    if n**depth > RENDER_GUARD:
        raise ExplosionGuard(f"{n}^{depth} points exceeds the {RENDER_GUARD:.0e} guard")
    pts = np.array([ifs.maps[0].fixed_point], dtype=np.complex128)
    for _ in range(depth):
        pts = np.concatenate([m.a * pts + m.b for m in ifs.maps])
    return PointCloud(pts, {"source": "det", "method": "det", "depth": depth, "seed": 0})


def _render_chaos(ifs: SimilarityIFS, count: int, seed: int) -> PointCloud:
    if count < 1:
        raise ExplosionGuard(f"count must be >= 1, got {count}")
    n = len(ifs.maps)
    # Philox is counter-based, so orbits are reproducible bit-for-bit.
    rng = np.random.Generator(np.random.Philox(seed))
    choices = rng.integers(0, n, size=count + CHAOS_BURN_IN)
    a = [m.a for m in ifs.maps]
    b = [m.b for m in ifs.maps]
    z = ifs.maps[0].fixed_point
    out = np.empty(count, dtype=np.complex128)
    for i, j in enumerate(choices):
        z = a[j] * z + b[j]
        if i >= CHAOS_BURN_IN:
            out[i - CHAOS_BURN_IN] = z
    return PointCloud(out, {"source": "chaos", "method": "chaos", "count": count, "seed": seed})


def cell_diameter(ifs: SimilarityIFS, address: Iterable[int]) -> float:
    """Exact diameter of the open-set image along a composition address."""
    diam = ifs.open_set.diameter
    for j in address:
        if not 0 <= j < len(ifs.maps):
            raise BadAddress(f"map index {j} out of range for {len(ifs.maps)} maps")
        diam *= ifs.maps[j].ratio
    return diam


def distinct_count(points: np.ndarray, tol: float = DEDUP_TOL) -> int:
    """Number of distinct points at the dedup tolerance."""
    if len(points) == 0:
        return 0
    pts = np.sort_complex(np.asarray(points, dtype=np.complex128))
    gaps = np.abs(np.diff(pts))
    return 1 + int(np.count_nonzero(gaps > tol))


def require_nondegenerate(cloud: PointCloud) -> PointCloud:
    if distinct_count(cloud.points) < 2:
        raise DegenerateCloud("cloud has fewer than 2 distinct points")
    return cloud


CSV_HEADER_PREFIX = "# motionlab cloud v1"


def cloud_to_csv(cloud: PointCloud) -> str:
    """Serialize as `x,y` rows at 17 significant digits (exact round-trip)."""
    seed = cloud.meta.get("seed", 0)
    method = cloud.meta.get("method", "unknown")
    lines = [f"{CSV_HEADER_PREFIX}; seed={seed}; method={method}"]
    lines += [f"{z.real:.17g},{z.imag:.17g}" for z in cloud.points]
    return "\n".join(lines) + "\n"


def cloud_from_csv(text: str) -> PointCloud:
    meta = {}
    pts = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for part in line.lstrip("#").split(";"):
                if "=" in part:
                    key, _, val = part.partition("=")
                    meta[key.strip()] = val.strip()
            continue
        x, _, y = line.partition(",")
        pts.append(complex(float(x), float(y)))
    if "seed" in meta:
        meta["seed"] = int(meta["seed"])
    return PointCloud(np.array(pts, dtype=np.complex128), meta)


def max_distance_to(points: np.ndarray, disk: Disk) -> float:
    """Largest distance from any point to the disk center, minus the radius."""
    return float(np.max(np.abs(points - disk.center))) - disk.radius


def clouds_equal(a: np.ndarray, b: np.ndarray, tol: float = DEDUP_TOL) -> bool:
    """Point-set equality after dedup, matched within tol."""
    sa = _dedup_sorted(a, tol)
    sb = _dedup_sorted(b, tol)
    if len(sa) != len(sb):
        return False
    return bool(np.all(np.abs(sa - sb) <= 2 * tol))


def _dedup_sorted(points: np.ndarray, tol: float) -> np.ndarray:
    pts = np.sort_complex(np.asarray(points, dtype=np.complex128))
    if len(pts) == 0:
        return pts
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.abs(np.diff(pts)) > tol
    return pts[keep]
