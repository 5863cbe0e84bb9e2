"""Plug-in estimation error bounds for rate-distortion values.

Quantifies how far the rate-distortion value computed from an estimated
source can sit from the true one, in terms of the L1 estimation error, and
inverts that bound into a sample-size requirement. Rates are in bits; the
confidence term uses natural log.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .info_theory import Distribution, ValidationError
from .rd_solver import DistortionMatrix


@dataclass(frozen=True)
class AlphabetSizes:
    """Sizes of the source and target alphabets."""

    n_source: int
    n_target: int

    def __post_init__(self) -> None:
        if self.n_source < 1 or self.n_target < 1:
            raise ValidationError("alphabet sizes must be positive integers")

    @property
    def product(self) -> int:
        return self.n_source * self.n_target


def min_positive_distortion(source: Distribution, dist: DistortionMatrix) -> float:
    """Smallest positive distortion entry reachable from the source support.

    Minimizes ``d(e, t)`` over source letters ``e`` with positive probability
    and targets ``t`` with ``d(e, t) > 0``. Raises when no such entry exists
    (a degenerate instance where every supported row is all zeros).
    """
    if source.labels != dist.rows:
        raise ValidationError("source labels must match distortion rows")
    supported = dist.d[source.probs > 0]
    positive = supported[supported > 0]
    if positive.size == 0:
        raise ValidationError(
            "degenerate instance: no positive distortion on the source support"
        )
    return float(positive.min())


def phi(t: float, sizes: AlphabetSizes) -> float:
    """``t * log2(k / t)`` with ``k`` the product alphabet size; ``phi(0) = 0``.

    Strictly increasing on ``[0, 1/2]`` whenever ``k >= 2``.
    """
    if t < 0 or t > 0.5:
        raise ValidationError("phi is defined on [0, 1/2]")
    if t == 0.0:
        return 0.0
    return t * math.log2(sizes.product / t)


def phi_inverse(y: float, sizes: AlphabetSizes, tol: float = 1e-12) -> float:
    """Inverse of ``phi`` on ``[0, 1/2]``, by bisection to ``tol``."""
    if sizes.product < 2:
        raise ValidationError("phi is not invertible for a product alphabet of size 1")
    top = phi(0.5, sizes)
    if y < 0 or y > top:
        raise ValidationError(f"phi_inverse needs y in [0, {top!r}], got {y!r}")
    lo, hi = 0.0, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if phi(mid, sizes) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def rate_deviation_bound(l1_error: float, d_min: float, sizes: AlphabetSizes) -> float:
    """Bound (bits) on the rate-distortion value shift under source error.

    For sources differing by ``l1_error`` in L1 norm with ``l1_error <=
    d_min / 4``, the rate-distortion values at any common distortion level
    differ by at most ``(7 / d_min) * l1_error * log2(k / l1_error)``.
    """
    if not (d_min > 0):
        raise ValidationError("d_min must be positive")
    if not (0 < l1_error <= d_min / 4):
        raise ValidationError("l1_error must lie in (0, d_min / 4]")
    return (7.0 / d_min) * l1_error * math.log2(sizes.product / l1_error)


def required_samples(
    epsilon: float, delta: float, d_min: float, sizes: AlphabetSizes
) -> int:
    """Samples sufficient for the plug-in rate to land within ``epsilon`` bits.

    Returns the smallest integer ``z`` with ``z >= (2 / t**2) *
    (ln(1 / delta) + n_source * ln 2)`` where ``t = phi_inverse(epsilon *
    d_min / 7)``, giving confidence at least ``1 - delta``.
    """
    if not (0 < delta <= 1):
        raise ValidationError("delta must lie in (0, 1]")
    max_eps = math.log2(sizes.n_source) if sizes.n_source > 1 else math.inf
    if not (0 < epsilon < max_eps):
        raise ValidationError(
            f"epsilon must lie in (0, log2(n_source)) = (0, {max_eps!r})"
        )
    if not (d_min > 0):
        raise ValidationError("d_min must be positive")
    t = phi_inverse(epsilon * d_min / 7.0, sizes)
    if t <= 0:
        raise ValidationError("epsilon * d_min / 7 is too small to invert")
    needed = (2.0 / (t * t)) * (math.log(1.0 / delta) + sizes.n_source * math.log(2.0))
    return int(math.ceil(needed))
