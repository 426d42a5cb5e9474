"""Closed-form quasiconformal distortion bounds.

All calculators are stateless arithmetic in the quasiconformality constant
k in [0, 1), with K = (1+k)/(1-k).  The area bounds assume the standard
normalization (support of the dilatation inside a compact set of logarithmic
capacity at most 1, identity at infinity up to o(1)); that hypothesis is a
documented precondition, not something computed here.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .errors import AreaOutOfRange, DeltaOutOfRange, DimOutOfRange, KOutOfRange

AREA_NORMALIZATION_NOTE = (
    "assumes dilatation supported in a compact set of logarithmic capacity <= 1 "
    "and F(z) = z + o(1) near infinity"
)


def k_to_big_k(k: float) -> float:
    _require_k(k)
    return (1.0 + k) / (1.0 - k)


def big_k_to_k(big_k: float) -> float:
    if big_k < 1.0:
        raise KOutOfRange(f"K must be >= 1, got {big_k}")
    return (big_k - 1.0) / (big_k + 1.0)


def _require_k(k: float) -> None:
    if not 0.0 <= k < 1.0:
        raise KOutOfRange(f"k must be in [0, 1), got {k}")


def dim_distortion_interval(dim_a: float, k: float) -> tuple:
    """Admissible range for the dimension of a k-quasiconformal image.

    The invariant quantity is t = 1/dim - 1/2, squeezed between t/K and K*t;
    inverting gives (lo, hi), clamped into (0, 2].  dim = 2 (t = 0) and
    k = 0 (K = 1) are fixed points.
    """
    if not 0.0 < dim_a <= 2.0:
        raise DimOutOfRange(f"dim must be in (0, 2], got {dim_a}")
    big_k = k_to_big_k(k)
    t = 1.0 / dim_a - 0.5
    lo = 1.0 / (big_k * t + 0.5)
    hi = 1.0 / (t / big_k + 0.5)
    return (min(lo, 2.0), min(hi, 2.0))


CONFORMAL_ON_SET = "on"  # dilatation vanishes a.e. on the set
CONFORMAL_OFF_SET = "off"  # dilatation vanishes a.e. off the set
GENERAL = "general"


def area_distortion_bound(area: float, k: float, case: str = GENERAL) -> float:
    """Upper bound for the area of the image set under the normalization above.

    on:      pi^(1-1/K) * area^(1/K)
    off:     K * area
    general: K * pi^(1-1/K) * area^(1/K)
    """
    _require_k(k)
    if area < 0:
        raise AreaOutOfRange(f"area must be >= 0, got {area}")
    big_k = k_to_big_k(k)
    if case == CONFORMAL_OFF_SET:
        return big_k * area
    if case not in (CONFORMAL_ON_SET, GENERAL):
        raise ValueError(f"unknown case {case!r}")
    if area > math.pi:
        raise AreaOutOfRange(
            f"area {area} exceeds pi; the capacity-one normalization caps |A| at pi"
        )
    power = math.pi ** (1.0 - 1.0 / big_k) * area ** (1.0 / big_k)
    return power if case == CONFORMAL_ON_SET else big_k * power


def smirnov_quasicircle_bound(k: float) -> float:
    """Upper bound 1 + k^2 for the Hausdorff dimension of a k-quasicircle."""
    _require_k(k)
    return 1.0 + k * k


class QsSpectrum(NamedTuple):
    lower: float
    upper: float
    clamped: bool


def quasisymmetric_spectrum(delta: float, k: float) -> QsSpectrum:
    """Dimension range for the image of a line set under a k-quasisymmetric map.

    With l = sqrt(1 - delta), the lower edge is
    1 - ((k+l)/(1+kl))^2 = (1-k^2) * delta / (1+kl)^2 (the second form is
    exact at k = 0), and the upper edge re-evaluates it at -min(k, l).
    When the clamp binds the upper edge saturates at 1 exactly.
    """
    if not 0.0 < delta <= 1.0:
        raise DeltaOutOfRange(f"delta must be in (0, 1], got {delta}")
    _require_k(k)
    ell = math.sqrt(1.0 - delta)
    lower = (1.0 - k * k) * delta / (1.0 + k * ell) ** 2
    if k >= ell:
        return QsSpectrum(lower, 1.0, True)
    upper = (1.0 - k * k) * delta / (1.0 - k * ell) ** 2
    return QsSpectrum(lower, upper, False)
