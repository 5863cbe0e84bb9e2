"""Discrete Blahut-Arimoto solver for rate-distortion trade-offs.

The solver minimizes ``rate + beta * expected distortion`` over channels from
a fixed finite source to a finite target alphabet, by alternating the optimal
marginal update with the optimal channel update. Rates are in bits and
``beta`` is the magnitude of the traced curve's tangent slope in bits per
distortion unit, so the channel update weights targets by ``2**(-beta * d)``.
Channel rows are normalized in the log domain, keeping very large ``beta``
values finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .info_theory import (
    Distribution,
    Label,
    ValidationError,
    _check_labels,
)

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class DistortionMatrix:
    """A nonnegative distortion table, rows indexed by source labels and
    columns by target labels."""

    rows: tuple[Label, ...]
    cols: tuple[Label, ...]
    d: np.ndarray

    def __post_init__(self) -> None:
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 2 or d.size == 0:
            raise ValidationError(
                f"distortion matrix must be 2-D and nonempty, got shape {d.shape}"
            )
        if not np.all(np.isfinite(d)):
            raise ValidationError("distortion entries must be finite")
        if np.any(d < 0):
            raise ValidationError("distortion entries must be nonnegative")
        rows = _check_labels(self.rows, d.shape[0], "DistortionMatrix rows")
        cols = _check_labels(self.cols, d.shape[1], "DistortionMatrix cols")
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class BAConfig:
    """Solver controls.

    Args:
        max_iters: iteration cap.
        tol: stop once the objective changes by less than this many bits
            between consecutive iterations.
        init_marginal: optional warm-start target marginal; defaults to
            uniform. Zero entries stay zero for the whole solve, freezing
            those targets out.
    """

    max_iters: int = 10_000
    tol: float = 1e-9
    init_marginal: Distribution | None = None

    def __post_init__(self) -> None:
        if self.max_iters < 1:
            raise ValidationError("max_iters must be at least 1")
        if not (self.tol > 0):
            raise ValidationError("tol must be positive")


@dataclass(frozen=True)
class BASolution:
    """A converged (or iteration-capped) solver result.

    ``marginal`` is always the source-weighted column sum of ``channel``, and
    ``objective_history`` records ``rate + beta * distortion`` in bits after
    each iteration.
    """

    channel: np.ndarray
    marginal: Distribution
    rate: float
    distortion: float
    beta: float
    iterations: int
    converged: bool
    objective_history: tuple[float, ...] = field(repr=False, default=())


def objective_value(
    source: Distribution,
    channel: np.ndarray,
    marginal: Distribution,
    dist: DistortionMatrix,
    beta: float,
) -> float:
    """``KL(joint || source x marginal) + beta * E[d]`` in bits.

    ``joint`` is ``source`` coupled through ``channel``. Returns ``math.inf``
    when the joint places mass where ``marginal`` has none. This is the
    functional the solver descends, so it is non-increasing along the
    iterate sequence.
    """
    chan = _check_channel(channel, len(source.labels), len(marginal.labels))
    if source.labels != dist.rows or marginal.labels != dist.cols:
        raise ValidationError("objective_value: labels must match the distortion table")
    return _objective_bits(source.probs, chan, marginal.probs, dist.d, beta)


def blahut_arimoto(
    source: Distribution,
    dist: DistortionMatrix,
    beta: float,
    cfg: BAConfig | None = None,
) -> BASolution:
    """Solve for the channel minimizing ``rate + beta * E[d]``.

    Args:
        source: distribution over the row alphabet of ``dist``.
        dist: distortion table; columns are the target alphabet.
        beta: nonnegative trade-off weight, in bits per distortion unit.
        cfg: solver controls, defaulting to ``BAConfig()``.

    Returns:
        A ``BASolution`` whose rate is the mutual information (bits) of the
        induced joint and whose marginal is the induced target marginal.
    """
    cfg = cfg or BAConfig()
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta >= 0):
        raise ValidationError("beta must be a finite nonnegative real")
    if source.labels != dist.rows:
        raise ValidationError("source labels must match distortion rows")
    p = source.probs
    d = dist.d
    n_targets = d.shape[1]
    if cfg.init_marginal is not None:
        if cfg.init_marginal.labels != dist.cols:
            raise ValidationError("init_marginal labels must match distortion cols")
        q = cfg.init_marginal.probs
    else:
        q = np.full(n_targets, 1.0 / n_targets)

    # The channel update scores targets by q * 2**(-beta * d). Shifting each
    # row's exponent by its distortion minimum keeps the largest weight at 1,
    # so nothing overflows and rows cannot collapse under huge beta; the shift
    # cancels in the normalization and re-enters the objective as a constant.
    row_min = d.min(axis=1)
    weights = np.exp2(-beta * (d - row_min[:, None]))
    weights[weights < 1e-300] = 0.0  # flush denormals, they only cost time
    j_base = beta * float(p @ row_min)

    history: list[float] = []
    j_prev = math.inf
    converged = False
    iterations = 0
    scores = weights * q
    partition = scores.sum(axis=1)
    for _ in range(cfg.max_iters):
        iterations += 1
        if partition.all():
            log2_partition = np.log2(partition)
        else:
            scores, partition, log2_partition = _rescue_rows(
                scores, partition, q, d, row_min, beta
            )
        # Objective at the in-sync pair (channel built from q, marginal q):
        # the KL and beta * E[d] terms telescope into -sum p * log2(Z).
        j = j_base - float(log2_partition @ p)
        history.append(j)
        if abs(j_prev - j) < cfg.tol:
            converged = True
            break
        j_prev = j
        q = (p / partition) @ scores
        scores = weights * q
        partition = scores.sum(axis=1)
    if not partition.all():
        scores, partition, _ = _rescue_rows(scores, partition, q, d, row_min, beta)
    chan = scores / partition[:, None]
    q = p @ chan

    joint = p[:, None] * chan
    rate = _rate_bits(joint, chan, q)
    distortion = float(np.sum(joint * d))
    return BASolution(
        channel=chan,
        marginal=Distribution(dist.cols, q),
        rate=rate,
        distortion=distortion,
        beta=float(beta),
        iterations=iterations,
        converged=converged,
        objective_history=tuple(history),
    )


def rd_curve(
    source: Distribution,
    dist: DistortionMatrix,
    betas: Sequence[float],
    cfg: BAConfig | None = None,
) -> list[BASolution]:
    """Trace the rate-distortion curve with one solve per ``beta``."""
    betas = list(betas)
    if not betas:
        raise ValidationError("rd_curve needs at least one beta")
    return [blahut_arimoto(source, dist, beta, cfg) for beta in betas]


def rate_at_distortion(
    source: Distribution,
    dist: DistortionMatrix,
    target_distortion: float,
    cfg: BAConfig | None = None,
    beta_cap: float = 1e7,
    distortion_tol: float = 1e-9,
) -> float:
    """Rate (bits) of the traced curve at a given distortion level.

    Bisects over ``beta`` until the achieved distortion brackets the target,
    then linearly interpolates between the bracketing converged points (exact
    wherever the curve is locally linear). Requires ``target_distortion`` to
    be nonnegative; levels at or beyond the zero-rate distortion return 0.
    """
    if not (target_distortion >= 0):
        raise ValidationError("target distortion must be nonnegative")
    lo = blahut_arimoto(source, dist, 0.0, cfg)
    if target_distortion >= lo.distortion:
        return 0.0
    beta_lo, d_lo, r_lo = 0.0, lo.distortion, lo.rate
    beta_hi = 1.0
    while True:
        hi = blahut_arimoto(source, dist, beta_hi, cfg)
        if hi.distortion <= target_distortion or beta_hi >= beta_cap:
            break
        beta_lo, d_lo, r_lo = beta_hi, hi.distortion, hi.rate
        beta_hi = min(beta_hi * 4.0, beta_cap)
    d_hi, r_hi = hi.distortion, hi.rate
    for _ in range(200):
        if d_lo - d_hi <= distortion_tol:
            break
        mid_beta = 0.5 * (beta_lo + beta_hi)
        mid = blahut_arimoto(source, dist, mid_beta, cfg)
        if mid.distortion > target_distortion:
            beta_lo, d_lo, r_lo = mid_beta, mid.distortion, mid.rate
        else:
            beta_hi, d_hi, r_hi = mid_beta, mid.distortion, mid.rate
    if d_lo <= d_hi:
        return r_hi
    w = (target_distortion - d_hi) / (d_lo - d_hi)
    return float(r_hi + w * (r_lo - r_hi))


# --- internals ---------------------------------------------------------------


def _rescue_rows(
    scores: np.ndarray,
    partition: np.ndarray,
    q: np.ndarray,
    d: np.ndarray,
    row_min: np.ndarray,
    beta: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Recompute fully underflowed rows in the log domain.

    A row's linear-domain scores can all flush to zero when the marginal has
    drifted far from every target the row can afford. Redoing those rows as
    ``2**(log2(q) - beta * d)`` with a per-row max shift keeps the channel
    row normalizable; the shift re-enters only the objective.
    """
    bad = partition == 0.0
    with np.errstate(divide="ignore"):
        exponents = np.log2(q)[None, :] - beta * (d[bad] - row_min[bad, None])
    shift = exponents.max(axis=1)
    if np.any(np.isinf(shift)):
        raise ValidationError(
            "channel rows lost all mass; the marginal support excludes every target"
        )
    rescued = np.exp2(exponents - shift[:, None])
    scores = scores.copy()
    partition = partition.copy()
    scores[bad] = rescued
    partition[bad] = rescued.sum(axis=1)
    log2_partition = np.log2(partition)
    log2_partition[bad] += shift
    return scores, partition, log2_partition


def _check_channel(channel: np.ndarray, n_rows: int, n_cols: int) -> np.ndarray:
    chan = np.asarray(channel, dtype=float)
    if chan.shape != (n_rows, n_cols):
        raise ValidationError(
            f"channel shape {chan.shape} does not match ({n_rows}, {n_cols})"
        )
    if np.any(chan < -1e-12) or np.any(np.abs(chan.sum(axis=1) - 1.0) > 1e-6):
        raise ValidationError("channel rows must be probability vectors")
    return np.clip(chan, 0.0, None)


def _objective_bits(
    p: np.ndarray, chan: np.ndarray, q: np.ndarray, d: np.ndarray, beta: float
) -> float:
    joint = p[:, None] * chan
    support = joint > 0
    if np.any(support & (q[None, :] == 0.0)):
        return math.inf
    kl = float(
        np.sum(
            joint[support]
            * (np.log2(chan[support]) - np.log2(np.broadcast_to(q, chan.shape)[support]))
        )
    )
    return kl + beta * float(np.sum(joint * d))


def _rate_bits(joint: np.ndarray, chan: np.ndarray, q: np.ndarray) -> float:
    # Evaluated as joint * log2(chan / q): wherever the joint is positive the
    # channel and marginal are too, so no factor can underflow to log2(0).
    support = joint > 0
    q_rows = np.broadcast_to(q, chan.shape)
    terms = joint[support] * (np.log2(chan[support]) - np.log2(q_rows[support]))
    return max(float(terms.sum()), 0.0)
