"""Explicit holomorphic motions of self-similar sets.

The single-block construction uses n maps z -> r*a(lam)*z + w_j with
r = 1/sqrt(2n) and a(lam) = exp(-(h + i*h~)(lam) * log n) for a positive
harmonic h, giving the closed-form reciprocal dimension
h(lam) + 1/2 + log2/(2 log n).  A composite motion places finitely many
such blocks in disjoint disks cascading toward the origin, realizing a
prescribed inf-harmonic reciprocal-dimension target up to a reported
truncation excess.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import harmonic as hm
from .errors import BadAddress, BadArity, DiskPackingFailed
from .ifs import ChaosGame, Disk, PointCloud, Similarity, SimilarityIFS, render_limit_set

# Safety margin applied to both disk separation and boundary clearance.
PLACEMENT_MARGIN = 0.005


def block_radius(n: int) -> float:
    return 1.0 / math.sqrt(2.0 * n)


def place_disks(n: int) -> tuple:
    """Deterministic centers for n disjoint disks of radius 1/sqrt(2n) in the unit disk.

    Two-stage scheme: concentric rings (outermost at the maximal admissible
    radius, successive rings one padded diameter apart), falling back to a
    hexagonal lattice clipped to the admissible radius.  Output is validated
    before return: pairwise distances >= 2r(1+margin) and |w| <= 1-r(1+margin).
    """
    if n < 10:
        raise DiskPackingFailed(f"need n >= 10, got {n}")
    r_pad = block_radius(n) * (1.0 + PLACEMENT_MARGIN)
    reach = 1.0 - r_pad  # largest admissible center modulus
    sep = 2.0 * r_pad

    centers = _ring_centers(n, reach, sep)
    if centers is None:
        centers = _hex_centers(n, reach, sep)
    if centers is None:
        raise DiskPackingFailed(f"both placement schemes failed for n={n}")
    _validate_centers(centers, n, reach, sep)
    return centers


def _ring_centers(n: int, reach: float, sep: float):
    candidates = []
    rho = reach
    while rho > 0.0 and len(candidates) < n:
        arg = sep / (2.0 * rho)
        cap = 1 if arg >= 1.0 else int(math.pi / math.asin(arg))
        take = min(cap, n - len(candidates))
        candidates += [rho * cmath.exp(2j * math.pi * i / take) for i in range(take)]
        rho -= sep
        if 0.0 < rho < sep:
            # too close to the origin for another ring; a single center
            # point keeps distance rho + sep >= sep to the last ring
            if len(candidates) < n:
                candidates.append(0.0 + 0.0j)
            break
    return tuple(candidates[:n]) if len(candidates) >= n else None


def _hex_centers(n: int, reach: float, sep: float):
    row_h = sep * math.sqrt(3.0) / 2.0
    jmax = int(reach / row_h) + 1
    imax = int(reach / sep) + 2
    pts = []
    for j in range(-jmax, jmax + 1):
        y = j * row_h
        off = 0.5 * sep if j % 2 else 0.0
        for i in range(-imax, imax + 1):
            w = complex(i * sep + off, y)
            if abs(w) <= reach:
                pts.append(w)
    if len(pts) < n:
        return None
    pts.sort(key=lambda w: (abs(w), math.atan2(w.imag, w.real)))
    return tuple(pts[:n])


def _validate_centers(centers, n: int, reach: float, sep: float) -> None:
    if len(centers) != n:
        raise DiskPackingFailed(f"placed {len(centers)} of {n} disks")
    pts = np.asarray(centers, dtype=np.complex128)
    if np.max(np.abs(pts)) > reach + 1e-12:
        raise DiskPackingFailed("a center violates the boundary clearance")
    # chunked pairwise check; fine up to a few thousand disks
    for i in range(0, n, 512):
        block = pts[i : i + 512, None] - pts[None, :]
        dist = np.abs(block)
        dist[np.arange(block.shape[0]), np.arange(i, i + block.shape[0])] = np.inf
        if dist.min() < sep - 1e-12:
            raise DiskPackingFailed("two centers are closer than the padded diameter")


@dataclass(frozen=True)
class AstalaMotion:
    """Single-block motion: n maps of ratio r*a(lam) anchored at fixed centers."""

    n: int
    h: hm.HarmonicFn
    h_conj: hm.HarmonicFn
    centers: tuple

    @property
    def r(self) -> float:
        return block_radius(self.n)

    def contraction(self, lam: complex) -> complex:
        """a(lam) = exp(-(h + i*h~)(lam) log n); |a| = n^{-h} in (0,1)."""
        hv = hm.eval_harmonic(self.h, lam)
        hc = hm.eval_harmonic(self.h_conj, lam)
        return cmath.exp(-complex(hv, hc) * math.log(self.n))

    def ifs_at(self, lam: complex) -> SimilarityIFS:
        q = self.r * self.contraction(lam)
        maps = tuple(Similarity(q, w) for w in self.centers)
        # images land in the disjoint disks D(w_j, r), so the open set
        # condition holds by construction
        return SimilarityIFS(maps, Disk(0.0 + 0.0j, 1.0), osc_verified=True)

    def reciprocal_dimension(self, lam: complex) -> float:
        return (
            hm.eval_harmonic(self.h, lam)
            + 0.5
            + math.log(2.0) / (2.0 * math.log(self.n))
        )

    def dimension(self, lam: complex) -> float:
        return 1.0 / self.reciprocal_dimension(lam)

    def point_image(self, address: Sequence[int], lam: complex) -> complex:
        """Limit point of the periodically extended address at parameter lam.

        Evaluates the geometric series over enough repetitions that the
        remaining cell diameter is below 1e-12, so the value is exact to
        that tolerance; at lam = 0 it reproduces the base limit point.
        """
        addr = list(address)
        if not addr:
            raise BadAddress("address must contain at least one map index")
        for j in addr:
            if not 0 <= j < self.n:
                raise BadAddress(f"map index {j} out of range for n={self.n}")
        q = self.r * self.contraction(lam)
        # open set D(0,1) has diameter 2; cells shrink by |q| per level
        depth = max(len(addr), int(math.ceil(math.log(5e-13) / math.log(abs(q)))))
        point = 0.0 + 0.0j
        power = 1.0 + 0.0j
        for i in range(depth):
            point += power * self.centers[addr[i % len(addr)]]
            power *= q
        return point


def build_astala_motion(h: hm.HarmonicFn, n: int, centers: Iterable[complex] = None) -> AstalaMotion:
    """Construct the single-block motion for a positive harmonic h and n >= 10.

    The conjugate is normalized to vanish at the origin, so a(0) = n^{-h(0)}
    is real positive and the lam = 0 system has ratio r * n^{-h(0)} on every map.
    Explicit centers (a placement override) are validated like fresh ones.
    """
    hm.require_positive(h)
    if centers is None:
        centers = place_disks(n)
    else:
        centers = tuple(complex(w) for w in centers)
        r_pad = block_radius(n) * (1.0 + PLACEMENT_MARGIN)
        _validate_centers(centers, n, 1.0 - r_pad, 2.0 * r_pad)
    return AstalaMotion(n=n, h=h, h_conj=hm.conjugate(h), centers=centers)


@dataclass(frozen=True)
class MotionComponent:
    motion: AstalaMotion
    container: Disk


@dataclass(frozen=True)
class CompositeMotion:
    """Finite union of scaled single-block motions in disjoint disks.

    The achieved reciprocal dimension is the minimum over components of
    h_j + 1/2 + log2/(2 log n_j); it overshoots the target reciprocal by at
    most log2/(2 log min(n_j)), reported rather than hidden.
    """

    components: tuple
    target: hm.InfHarmonicFn

    def reciprocal_dimension(self, lam: complex) -> float:
        return min(c.motion.reciprocal_dimension(lam) for c in self.components)

    def dimension(self, lam: complex) -> float:
        # dimension of a disjoint union: countable stability gives the max
        return 1.0 / self.reciprocal_dimension(lam)

    def target_reciprocal(self, lam: complex) -> float:
        return hm.eval_inf_harmonic(self.target, lam)

    def excess(self, lam: complex) -> float:
        """Achieved minus target reciprocal dimension (>= 0 by construction)."""
        return self.reciprocal_dimension(lam) - self.target_reciprocal(lam)

    @property
    def truncation_bound(self) -> float:
        n_min = min(c.motion.n for c in self.components)
        return math.log(2.0) / (2.0 * math.log(n_min))

    def component_ifs_at(self, index: int, lam: complex) -> SimilarityIFS:
        """Component system conjugated into its container disk."""
        comp = self.components[index]
        base = comp.motion.ifs_at(lam)
        zeta, s = comp.container.center, comp.container.radius
        maps = tuple(
            Similarity(m.a, s * m.b + zeta * (1.0 - m.a)) for m in base.maps
        )
        return SimilarityIFS(maps, comp.container, osc_verified=True)


def container_cascade(count: int) -> tuple:
    """Disjoint container disks D(3/4 * 2^-j, 2^-j / 8) accumulating at 0."""
    return tuple(Disk(0.75 * 0.5**j, 0.125 * 0.5**j) for j in range(1, count + 1))


def build_prescribed_motion(target: hm.InfHarmonicFn, component_ns: Sequence[int]) -> CompositeMotion:
    """Realize a reciprocal-dimension target (>= 1/2 strictly) at finite truncation.

    Each target member u_j yields the block harmonic h_j = u_j - 1/2, which
    must itself pass the positivity certificate; the j-th block is scaled
    into the j-th cascade container.
    """
    ns = [int(n) for n in component_ns]
    if len(ns) != len(target.members):
        raise BadArity(
            f"{len(target.members)} target members but {len(ns)} component sizes"
        )
    containers = container_cascade(len(ns))
    components = []
    for member, n, container in zip(target.members, ns, containers):
        h = hm.shift(member, -0.5)
        components.append(MotionComponent(build_astala_motion(h, n), container))
    return CompositeMotion(tuple(components), target)


def motion_cloud(m, lam: complex, method) -> PointCloud:
    """Render the limit set of a motion at a parameter point.

    A composite renders every component into its container; a chaos budget
    is split evenly across components with per-component seed offsets.
    """
    if isinstance(m, AstalaMotion):
        return render_limit_set(m.ifs_at(lam), method)
    count = len(m.components)
    parts = []
    for j in range(count):
        ifs = m.component_ifs_at(j, lam)
        if isinstance(method, ChaosGame):
            share = method.count // count + (1 if j < method.count % count else 0)
            sub = ChaosGame(max(share, 1), method.seed + j)
        else:
            sub = method
        parts.append(render_limit_set(ifs, sub).points)
    meta = {"source": "composite", "method": "chaos" if isinstance(method, ChaosGame) else "det",
            "seed": getattr(method, "seed", 0)}
    return PointCloud(np.concatenate(parts), meta)
