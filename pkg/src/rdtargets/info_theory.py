"""Finite-alphabet information measures in bits.

All logarithms are base 2 and ``0 * log(0)`` is taken as 0. Probability
vectors and joint mass matrices are validated on construction: nonnegative
entries summing to one within ``PROB_TOL``. Inputs inside that tolerance are
renormalized exactly to one; anything further off is rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

# Absolute tolerance for "sums to one" and related mass checks.
PROB_TOL = 1e-9

Label = Hashable


class ValidationError(ValueError):
    """A malformed distribution, matrix, or operation input."""


def _prob_array(values: Sequence[float] | np.ndarray, ndim: int) -> np.ndarray:
    """Validate and renormalize a probability vector or mass matrix."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != ndim:
        raise ValidationError(
            f"expected a {ndim}-D probability array, got shape {arr.shape}"
        )
    if arr.size == 0:
        raise ValidationError("probability arrays must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("probabilities must be finite")
    if np.any(arr < -PROB_TOL):
        raise ValidationError("probabilities must be nonnegative")
    arr = np.clip(arr, 0.0, None)
    total = float(arr.sum())
    if abs(total - 1.0) > PROB_TOL:
        raise ValidationError(f"probabilities must sum to 1, got {total!r}")
    arr = arr / total
    arr.setflags(write=False)
    return arr


def _check_labels(labels: Sequence[Label], count: int, what: str) -> tuple[Label, ...]:
    out = tuple(labels)
    if len(out) != count:
        raise ValidationError(
            f"{what}: got {len(out)} labels for {count} probabilities"
        )
    if len(set(out)) != len(out):
        raise ValidationError(f"{what}: labels must be unique")
    return out


@dataclass(frozen=True)
class Distribution:
    """A probability mass function over a finite labeled alphabet."""

    labels: tuple[Label, ...]
    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = _prob_array(self.probs, ndim=1)
        labels = _check_labels(self.labels, probs.shape[0], "Distribution")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def uniform(cls, labels: Sequence[Label]) -> "Distribution":
        labels = tuple(labels)
        n = len(labels)
        if n == 0:
            raise ValidationError("uniform distribution needs at least one label")
        return cls(labels, np.full(n, 1.0 / n))

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class JointDistribution:
    """A joint probability mass function over a product of two alphabets."""

    row_labels: tuple[Label, ...]
    col_labels: tuple[Label, ...]
    mass: np.ndarray

    def __post_init__(self) -> None:
        mass = _prob_array(self.mass, ndim=2)
        rows = _check_labels(self.row_labels, mass.shape[0], "JointDistribution rows")
        cols = _check_labels(self.col_labels, mass.shape[1], "JointDistribution cols")
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        object.__setattr__(self, "mass", mass)

    def row_marginal(self) -> Distribution:
        return Distribution(self.row_labels, self.mass.sum(axis=1))

    def col_marginal(self) -> Distribution:
        return Distribution(self.col_labels, self.mass.sum(axis=0))

    def transposed(self) -> "JointDistribution":
        return JointDistribution(self.col_labels, self.row_labels, self.mass.T)


def entropy(dist: Distribution) -> float:
    """Shannon entropy of ``dist`` in bits."""
    p = dist.probs
    support = p > 0
    value = -float(np.sum(p[support] * np.log2(p[support])))
    return max(value, 0.0)


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """Relative entropy ``KL(p || q)`` in bits.

    The two distributions must share the same label sequence. Returns
    ``math.inf`` when ``p`` places mass outside the support of ``q``.
    """
    if p.labels != q.labels:
        raise ValidationError("kl_divergence requires identical label sequences")
    pv, qv = p.probs, q.probs
    support = pv > 0
    if np.any(qv[support] == 0.0):
        return math.inf
    value = float(np.sum(pv[support] * (np.log2(pv[support]) - np.log2(qv[support]))))
    return value


def mutual_information(joint: JointDistribution) -> float:
    """Mutual information of a joint distribution in bits."""
    mass = joint.mass
    row = mass.sum(axis=1)
    col = mass.sum(axis=0)
    support = mass > 0
    # Marginals are summed separately (not as an outer product) so tiny joint
    # masses cannot underflow the denominator to log2(0).
    row_part = np.broadcast_to(row[:, None], mass.shape)[support]
    col_part = np.broadcast_to(col[None, :], mass.shape)[support]
    terms = mass[support] * (
        np.log2(mass[support]) - np.log2(row_part) - np.log2(col_part)
    )
    return max(float(terms.sum()), 0.0)


def log_sum_exp(values: Sequence[float] | np.ndarray) -> float:
    """Numerically stable ``log(sum(exp(values)))`` (natural log).

    Computed as ``m + log(sum(exp(v - m)))`` with ``m = max(values)`` so very
    negative inputs do not underflow to ``-inf`` prematurely.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValidationError("log_sum_exp expects a nonempty 1-D array")
    if np.any(np.isnan(arr)):
        raise ValidationError("log_sum_exp inputs must not be NaN")
    m = float(arr.max())
    if math.isinf(m) and m < 0:
        return -math.inf
    return m + math.log(float(np.exp(arr - m).sum()))
