"""Closed-form harmonic functions on the unit disk and their lower envelopes.

Four representations are supported and closed under the operations used
elsewhere in the package:

* ``Affine(alpha, beta, gamma)``    -- z -> alpha*Re(z) + beta*Im(z) + gamma
* ``TrigPoly(c0, cos_coeffs, sin_coeffs)``
                                    -- r e^{i t} -> c0 + sum_m r^m (c_m cos mt + d_m sin mt)
* ``Scaled(weight, inner)``         -- nonnegative multiple of another function
* ``Sum(terms)``                    -- finite sum

``InfHarmonicFn`` is a finite lower envelope of positive members; evaluation
is the pointwise minimum.  Positivity of members is certified by sampling the
boundary circle (the minimum principle pushes the interior minimum to the
boundary for these closed forms), with an exact formula in the affine case.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

from .errors import (
    InvalidC,
    NegativeValue,
    NonPositiveHarmonic,
    PointOutsideDisk,
    UnsupportedForm,
)

# Margin required at the disk center by the positivity certificate.
POSITIVITY_MARGIN = 1e-6
# Boundary samples used to certify positivity of trig-polynomial forms.
BOUNDARY_SAMPLES = 720
# Rounding slack allowed in the sampled boundary minimum.
BOUNDARY_SLACK = 1e-12


@dataclass(frozen=True)
class Affine:
    alpha: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class TrigPoly:
    c0: float
    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cos_coeffs", tuple(float(c) for c in self.cos_coeffs))
        object.__setattr__(self, "sin_coeffs", tuple(float(d) for d in self.sin_coeffs))


@dataclass(frozen=True)
class Scaled:
    weight: float
    inner: "HarmonicFn"

    def __post_init__(self):
        if self.weight < 0:
            raise NegativeValue(f"Scaled weight must be >= 0, got {self.weight}")


@dataclass(frozen=True)
class Sum:
    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


HarmonicFn = Union[Affine, TrigPoly, Scaled, Sum]


def require_inside_disk(lam: complex) -> complex:
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise PointOutsideDisk(f"point has non-finite coordinates: {lam}")
    if abs(lam) >= 1.0:
        raise PointOutsideDisk(f"|lambda| = {abs(lam)} >= 1")
    return lam


def _eval_closed(f: HarmonicFn, lam: complex) -> float:
    """Evaluate the closed form without the open-disk guard (valid on |z| <= 1)."""
    if isinstance(f, Affine):
        return f.alpha * lam.real + f.beta * lam.imag + f.gamma
    if isinstance(f, TrigPoly):
        # r^m cos(m t) = Re(z^m), r^m sin(m t) = Im(z^m)
        value = f.c0
        zp = 1.0 + 0.0j
        n = max(len(f.cos_coeffs), len(f.sin_coeffs))
        for m in range(n):
            zp *= lam
            c = f.cos_coeffs[m] if m < len(f.cos_coeffs) else 0.0
            d = f.sin_coeffs[m] if m < len(f.sin_coeffs) else 0.0
            value += c * zp.real + d * zp.imag
        return value
    if isinstance(f, Scaled):
        return f.weight * _eval_closed(f.inner, lam)
    if isinstance(f, Sum):
        return sum(_eval_closed(t, lam) for t in f.terms)
    raise UnsupportedForm(f"not a harmonic-function representation: {f!r}")


def eval_harmonic(f: HarmonicFn, lam: complex) -> float:
    """Value of the closed-form harmonic function at a point of the open disk."""
    return _eval_closed(f, require_inside_disk(lam))


def conjugate(f: HarmonicFn) -> HarmonicFn:
    """Harmonic conjugate normalized to vanish at the origin.

    Returns g with g(0) = 0 such that f + i*g is holomorphic on the disk.
    The result stays inside the same representation family:
    Affine(a, b, c) -> Affine(-b, a, 0) and a trig polynomial swaps its
    cosine/sine coefficients with a sign.
    """
    if isinstance(f, Affine):
        return Affine(-f.beta, f.alpha, 0.0)
    if isinstance(f, TrigPoly):
        return TrigPoly(
            0.0,
            tuple(-d for d in f.sin_coeffs)
            + (0.0,) * max(0, len(f.cos_coeffs) - len(f.sin_coeffs)),
            f.cos_coeffs,
        )
    if isinstance(f, Scaled):
        return Scaled(f.weight, conjugate(f.inner))
    if isinstance(f, Sum):
        return Sum(tuple(conjugate(t) for t in f.terms))
    raise UnsupportedForm(f"no closed-form conjugate for {f!r}")


def shift(f: HarmonicFn, offset: float) -> HarmonicFn:
    """f + offset within the representation family."""
    if isinstance(f, Affine):
        return Affine(f.alpha, f.beta, f.gamma + offset)
    if isinstance(f, TrigPoly):
        return TrigPoly(f.c0 + offset, f.cos_coeffs, f.sin_coeffs)
    return Sum((f, Affine(0.0, 0.0, offset)))


def boundary_minimum(f: HarmonicFn, samples: int = BOUNDARY_SAMPLES) -> float:
    """Minimum of f over the closed disk, located on the boundary circle.

    Exact for affine forms; sampled on ``samples`` equispaced boundary points
    otherwise.  The minimum principle for harmonic functions makes the
    boundary minimum control the interior, so this is the whole certificate.
    """
    if isinstance(f, Affine):
        return f.gamma - math.hypot(f.alpha, f.beta)
    values = (
        _eval_closed(f, cmath.exp(2j * math.pi * j / samples)) for j in range(samples)
    )
    return min(values)


def is_positive(f: HarmonicFn, margin: float = POSITIVITY_MARGIN) -> bool:
    """Positivity certificate for the open disk.

    Two sampled conditions: the boundary minimum is nonnegative (so the
    minimum principle makes f nonnegative on the whole disk, with zeros
    only if f vanishes identically) and the center value meets the margin
    (which rules out the identically-zero case and, through Harnack,
    quantifies interior positivity).  Functions like 1 + Re(z), positive
    inside but with boundary infimum 0, are accepted; anything dipping
    negative on the closure is not.
    """
    return (
        boundary_minimum(f) >= -BOUNDARY_SLACK
        and _eval_closed(f, 0.0 + 0.0j) >= margin
    )


def require_positive(f: HarmonicFn, margin: float = POSITIVITY_MARGIN) -> HarmonicFn:
    bmin = boundary_minimum(f)
    if bmin < -BOUNDARY_SLACK:
        raise NonPositiveHarmonic(
            f"boundary minimum {bmin:.6g} is negative: not positive on the disk"
        )
    center = _eval_closed(f, 0.0 + 0.0j)
    if center < margin:
        raise NonPositiveHarmonic(
            f"center value {center:.6g} is below the positivity margin {margin:g}"
        )
    return f


@dataclass(frozen=True)
class InfHarmonicFn:
    """Finite lower envelope of positive harmonic functions.

    The construction certifies every member positive (with margin), which
    makes the envelope strictly positive on the open disk and hence a valid
    inf-harmonic function.  Evaluation is the pointwise minimum of members.
    """

    members: tuple = field(default=())

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise NonPositiveHarmonic("envelope needs at least one member")
        for m in members:
            require_positive(m)
        object.__setattr__(self, "members", members)

    def __call__(self, lam: complex) -> float:
        return eval_inf_harmonic(self, lam)


def eval_inf_harmonic(u: InfHarmonicFn, lam: complex) -> float:
    lam = require_inside_disk(lam)
    return min(_eval_closed(m, lam) for m in u.members)


def harnack_distance(lam1: complex, lam2: complex) -> float:
    """Optimal two-sided ratio bound for positive harmonic functions on the disk.

    From the center the distance is (1+|z|)/(1-|z|); general pairs transport
    through the Mobius-invariant pseudo-hyperbolic distance
    rho = |z1-z2| / |1 - conj(z2) z1|.
    """
    lam1 = require_inside_disk(lam1)
    lam2 = require_inside_disk(lam2)
    rho = abs(lam1 - lam2) / abs(1.0 - lam2.conjugate() * lam1)
    return (1.0 + rho) / (1.0 - rho)


def harnack_interval(u0: float, lam1: complex, lam2: complex) -> tuple:
    """Range allowed for u(lam1) given u(lam2) = u0, u inf-harmonic."""
    if u0 < 0:
        raise NegativeValue(f"u0 must be >= 0, got {u0}")
    tau = harnack_distance(lam1, lam2)
    return (u0 / tau, u0 * tau)


def sym_harnack_interval(v0: float, y: float) -> tuple:
    """Range allowed for v(iy) given v(0) = v0, v an envelope of symmetric members.

    Symmetric means invariant under conjugation of the argument; the bound
    (1-y^2)/(1+y^2) <= v(iy)/v(0) <= (1+y^2)/(1-y^2) is the sharpened
    Harnack inequality along the imaginary axis.
    """
    if v0 < 0:
        raise NegativeValue(f"v0 must be >= 0, got {v0}")
    if not -1.0 < y < 1.0:
        raise PointOutsideDisk(f"|y| = {abs(y)} >= 1")
    y2 = y * y
    return (v0 * (1.0 - y2) / (1.0 + y2), v0 * (1.0 + y2) / (1.0 - y2))


# Bisection contract for the envelope solver below.
_T_LO = 1e-9
_T_CAP = 1e12
_REL_TOL = 1e-12


def infcone_envelope_solve(u_values, c: float) -> float:
    """Largest t with sum_j (1/c) exp(-u_j / t) <= 1, by monotone bisection.

    The left side increases in t, so the feasible set is an interval
    (0, t*].  Returns 0.0 when even t = 1e-9 is infeasible, ``math.inf``
    when the predicate still holds at t = 1e12 (e.g. an empty list, or at
    most c entries), and otherwise t* to relative width 1e-12.

    For u_j = -log(a_j) this is the reciprocal of the generalized
    similarity dimension: the unique s with sum_j a_j^s = c satisfies
    s * t* = 1.
    """
    if c <= 0:
        raise InvalidC(f"c must be > 0, got {c}")
    u = [float(v) for v in u_values]
    if any(v < 0 for v in u):
        raise NegativeValue("entries must be >= 0")
    if not u:
        return math.inf

    def feasible(t: float) -> bool:
        return sum(math.exp(-v / t) for v in u) <= c

    if not feasible(_T_LO):
        return 0.0
    hi = 1.0
    while feasible(hi):
        hi *= 2.0
        if hi > _T_CAP:
            return math.inf
    lo = _T_LO
    while hi - lo > _REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
