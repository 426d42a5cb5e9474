"""Numerical dimension estimators for planar point clouds.

Two routes to the growth exponent: counting occupied dyadic squares of side
2^-k on the absolute lattice (upper Minkowski / box counting), and greedily
packing disjoint disks of prescribed diameters with centres at cloud points
(pre-packing).  Both feed a log-log least-squares fit with per-scale local
slopes as diagnostics.

Coordinates are used raw, never rescaled, so square boundaries follow the
half-open convention [m 2^-k, (m+1) 2^-k) exactly.  The greedy packing count
is a lower bound on the optimal packing number; it preserves the growth
exponent, which is all the estimate needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateCloud, ScaleOverflow, WindowTooSmall
from .ifs import PointCloud, distinct_count

# Scales with count above (cloud size)^SATURATION_EXPONENT are dropped by the
# automatic window: beyond that the finite sample flattens the curve.
SATURATION_EXPONENT = 0.8
# Coarsest scales dropped by the automatic window.
AUTO_DROP_COARSEST = 2


@dataclass(frozen=True)
class ScaleCounts:
    """Counts per scale: (k, N_k) for boxes or (delta, M_delta) for packings."""

    entries: tuple  # ((scale, count), ...)
    kind: str  # "box" | "packing"
    n_points: int = 0

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((s, int(c)) for s, c in self.entries))

    def scales(self) -> list:
        return [s for s, _ in self.entries]

    def counts(self) -> list:
        return [c for _, c in self.entries]

    def log_points(self) -> tuple:
        """(x, y) with x = log2(1/scale), y = log2(count); slope = dimension."""
        if self.kind == "box":
            x = np.array([float(k) for k, _ in self.entries])
        else:
            x = np.array([math.log2(1.0 / d) for d, _ in self.entries])
        y = np.log2(np.array([c for _, c in self.entries], dtype=float))
        return x, y


@dataclass(frozen=True)
class DimensionEstimate:
    value: float  # slope clamped into [0, 2]
    window: tuple  # (first, last) scale used
    slope_stderr: float
    r_squared: float
    per_scale_local_slopes: tuple

    def as_text(self) -> str:
        lines = [
            f"value={self.value:.17g}",
            f"window={self.window[0]:.17g}..{self.window[1]:.17g}",
            f"slope_stderr={self.slope_stderr:.17g}",
            f"r_squared={self.r_squared:.17g}",
            "local_slopes=" + " ".join(f"{s:.6g}" for s in self.per_scale_local_slopes),
        ]
        return "\n".join(lines)


def dyadic_box_counts(cloud: PointCloud, k_min: int, k_max: int) -> ScaleCounts:
    """Occupied dyadic squares [m 2^-k, (m+1) 2^-k) x [n 2^-k, (n+1) 2^-k) per k."""
    if not 0 <= k_min <= k_max <= 52:
        raise ScaleOverflow(f"need 0 <= k_min <= k_max <= 52, got [{k_min}, {k_max}]")
    if distinct_count(cloud.points) < 2:
        raise DegenerateCloud("box counting needs >= 2 distinct points")
    x, y = cloud.points.real, cloud.points.imag
    if np.max(np.abs(cloud.points)) * 2.0**k_max >= 2.0**52:
        # beyond this the lattice indices stop being exact in float64
        raise ScaleOverflow("coordinates too large for the requested scale")
    entries = []
    for k in range(k_min, k_max + 1):
        side = 2.0**k
        cells = np.floor(x * side) + 1j * np.floor(y * side)
        entries.append((k, len(np.unique(cells))))
    return ScaleCounts(tuple(entries), "box", len(cloud.points))


def packing_counts(cloud: PointCloud, diameters: Sequence[float]) -> ScaleCounts:
    """Greedy disjoint-disk counts with centres at cloud points.

    Points are scanned in cloud order (seed-stable); a disk of diameter
    delta is accepted when its centre is at distance >= delta from every
    accepted centre.  A spatial hash on a delta-sized grid keeps the scan
    near-linear.
    """
    if distinct_count(cloud.points) < 2:
        raise DegenerateCloud("packing needs >= 2 distinct points")
    ds = [float(d) for d in diameters]
    if not ds or any(d <= 0 for d in ds):
        raise WindowTooSmall("diameters must be a nonempty positive list")
    if any(ds[i] < ds[i + 1] for i in range(len(ds) - 1)):
        raise WindowTooSmall("diameters must be sorted descending")
    pts = cloud.points
    entries = []
    for d in ds:
        accepted = {}
        count = 0
        inv = 1.0 / d
        for z in pts:
            ci = int(math.floor(z.real * inv))
            cj = int(math.floor(z.imag * inv))
            ok = True
            for ii in (ci, ci - 1, ci + 1):
                for jj in (cj, cj - 1, cj + 1):
                    for w in accepted.get((ii, jj), ()):
                        if abs(z - w) < d:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                accepted.setdefault((ci, cj), []).append(z)
                count += 1
        entries.append((d, count))
    return ScaleCounts(tuple(entries), "packing", len(pts))


def minkowski_estimate(counts: ScaleCounts, window="auto",
                       sat_exponent: float = SATURATION_EXPONENT) -> DimensionEstimate:
    """Least-squares slope of log2(count) against log2(1/scale) over the window.

    window="auto" drops the AUTO_DROP_COARSEST coarsest scales and every
    saturated scale (count above n_points^sat_exponent); otherwise a
    (first, last) pair selects scales inclusively.  Needs >= 3 scales.
    """
    return _fit(counts, window, sat_exponent)


def packing_estimate(counts: ScaleCounts, window="auto",
                     sat_exponent: float = SATURATION_EXPONENT) -> DimensionEstimate:
    """As minkowski_estimate, with log M_delta against log(1/delta)."""
    return _fit(counts, window, sat_exponent)


def _fit(counts: ScaleCounts, window, sat_exponent: float) -> DimensionEstimate:
    x_all, y_all = counts.log_points()
    order = np.argsort(x_all)  # coarse -> fine
    x_all, y_all = x_all[order], y_all[order]
    raw = np.array([counts.counts()[i] for i in order], dtype=float)

    if window == "auto":
        keep = np.ones(len(x_all), dtype=bool)
        keep[:AUTO_DROP_COARSEST] = False
        if counts.n_points:
            keep &= raw <= counts.n_points**sat_exponent
    else:
        lo, hi = window
        lo_x, hi_x = _window_to_x(counts, lo, hi)
        keep = (x_all >= lo_x - 1e-9) & (x_all <= hi_x + 1e-9)
    x, y = x_all[keep], y_all[keep]
    if len(x) < 3:
        raise WindowTooSmall(f"{len(x)} scales in window, need >= 3")

    slope, stderr, r2 = _least_squares(x, y)
    local = tuple(
        (y[i + 1] - y[i]) / (x[i + 1] - x[i]) for i in range(len(x) - 1)
    )
    first, last = _x_to_window(counts, x[0], x[-1])
    return DimensionEstimate(
        value=min(2.0, max(0.0, slope)),
        window=(first, last),
        slope_stderr=stderr,
        r_squared=r2,
        per_scale_local_slopes=local,
    )


def _window_to_x(counts: ScaleCounts, lo, hi) -> tuple:
    if counts.kind == "box":
        return float(lo), float(hi)
    # packing windows are given as diameters, coarse (large) to fine (small)
    return math.log2(1.0 / lo), math.log2(1.0 / hi)


def _x_to_window(counts: ScaleCounts, x0: float, x1: float) -> tuple:
    if counts.kind == "box":
        return x0, x1
    return 2.0**-x0, 2.0**-x1


def _least_squares(x: np.ndarray, y: np.ndarray) -> tuple:
    n = len(x)
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    slope = float(np.sum((x - xm) * (y - ym)) / sxx)
    resid = y - ym - slope * (x - xm)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - ym) ** 2))
    stderr = math.sqrt(ss_res / (n - 2) / sxx) if n > 2 else 0.0
    if ss_tot <= 1e-300:
        r2 = 1.0 if ss_res <= 1e-300 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return slope, stderr, r2


def counts_to_csv(counts: ScaleCounts) -> str:
    name = "k" if counts.kind == "box" else "delta"
    lines = [f"{name},count"]
    if counts.kind == "box":
        lines += [f"{int(k)},{c}" for k, c in counts.entries]
    else:
        lines += [f"{d:.17g},{c}" for d, c in counts.entries]
    return "\n".join(lines) + "\n"


def estimate_csv_row(label: str, est: DimensionEstimate) -> str:
    return (
        f"{label},{est.value:.17g},{est.window[0]:.17g},{est.window[1]:.17g},"
        f"{est.slope_stderr:.17g},{est.r_squared:.17g}"
    )
