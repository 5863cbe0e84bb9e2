"""Bandit agents built around rate-distortion learning targets.

Five policies share one config surface:

* ``thompson_action``: classic posterior sampling.
* ``sts_action``: satisficing posterior sampling; plays the first arm whose
  sampled mean is within ``epsilon`` of the sampled optimum.
* ``blasts_action``: draws ``z`` posterior samples, solves for the
  rate-distortion optimal target channel at ``beta`` under squared-regret
  distortion, then probability-matches against that channel.
* ``vids_action``: information-directed sampling toward the optimal-arm
  target, with a variance proxy for information gain.
* ``vblaids_action``: same ratio minimization, but toward the
  rate-distortion target channel at ``beta`` (or an adaptive ``beta``).

All agents are pure functions of ``(posterior state, config, rng)``; ties
break toward the lowest arm index, and every randomized step consumes only
the generator passed in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bandit import PosteriorState, sample_posterior_means, squared_regret_distortion
from .info_theory import Distribution, ValidationError, entropy
from .rd_solver import BAConfig, BASolution, blahut_arimoto

ADAPTIVE = "adaptive"

# Variance proxies below this are treated as pure numerical dust; posteriors
# this flat carry no usable information signal and trigger the greedy fallback.
_V_FLOOR = 1e-24


@dataclass(frozen=True)
class ActionDistribution:
    """A probability vector over arms."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValidationError("action probabilities must be a nonempty vector")
        if np.any(arr < -1e-12) or abs(float(arr.sum()) - 1.0) > 1e-9:
            raise ValidationError("action probabilities must form a distribution")
        arr = np.clip(arr, 0.0, None)
        arr = arr / arr.sum()
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def sample(self, rng: np.random.Generator) -> int:
        return _categorical(self.probs, rng)


@dataclass(frozen=True)
class AgentConfig:
    """Shared agent knobs; unused fields are ignored by simpler agents.

    Args:
        z: posterior samples per decision for the sample-based agents.
        beta: rate-distortion trade-off weight, or ``ADAPTIVE`` to derive it
            each period from the inverse minimized information ratio.
        ba_cfg: solver controls for the per-period channel solve.
        epsilon: satisficing slack for ``sts_action``.
        beta_max: cap applied to adaptive ``beta`` values.
    """

    z: int = 16
    beta: float | str = 1.0
    ba_cfg: BAConfig = field(default_factory=BAConfig)
    epsilon: float = 0.0
    beta_max: float = 1e6

    def __post_init__(self) -> None:
        if self.z < 1:
            raise ValidationError("z must be at least 1")
        if isinstance(self.beta, str):
            if self.beta != ADAPTIVE:
                raise ValidationError(f"beta must be a real or {ADAPTIVE!r}")
        elif not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValidationError("beta must be finite and nonnegative")
        if not (self.epsilon >= 0):
            raise ValidationError("epsilon must be nonnegative")
        if not (self.beta_max > 0):
            raise ValidationError("beta_max must be positive")


# --- posterior-sampling agents ----------------------------------------------


def thompson_action(state: PosteriorState, rng: np.random.Generator) -> int:
    """Sample one environment from the posterior and play its best arm."""
    means = sample_posterior_means(state, 1, rng)[0]
    return int(np.argmax(means))


def sts_action(state: PosteriorState, epsilon: float, rng: np.random.Generator) -> int:
    """Play the first arm within ``epsilon`` of the sampled optimum."""
    if not (epsilon >= 0):
        raise ValidationError("epsilon must be nonnegative")
    means = sample_posterior_means(state, 1, rng)[0]
    threshold = float(means.max()) - epsilon
    return int(np.argmax(means >= threshold))


# --- rate-distortion target machinery ----------------------------------------


def optimal_action_channel(samples: np.ndarray) -> BASolution:
    """The infinite-``beta`` target: each sample maps to its best arm.

    Built analytically (row-argmax indicators) rather than by solving, with
    the marginal ``q(a) = count(a is optimal) / z``.
    """
    arr = _check_samples(samples, min_z=1)
    z, n_arms = arr.shape
    best = np.argmax(arr, axis=1)
    channel = np.zeros((z, n_arms))
    channel[np.arange(z), best] = 1.0
    counts = np.bincount(best, minlength=n_arms)
    marginal = Distribution(tuple(range(n_arms)), counts / z)
    return BASolution(
        channel=channel,
        marginal=marginal,
        rate=entropy(marginal),
        distortion=0.0,
        beta=math.inf,
        iterations=0,
        converged=True,
    )


def target_channel(samples: np.ndarray, beta: float, ba_cfg: BAConfig) -> BASolution:
    """Rate-distortion optimal channel from samples to arms at ``beta``."""
    arr = _check_samples(samples, min_z=1)
    source = Distribution.uniform(tuple(range(arr.shape[0])))
    dist = squared_regret_distortion(arr)
    return blahut_arimoto(source, dist, beta, ba_cfg)


def expected_regret_vector(samples: np.ndarray, target: BASolution) -> np.ndarray:
    """Per-arm expected shortfall against the target channel's value.

    ``delta(a) = max(0, E[target reward] - E[reward of a])`` where both
    expectations run over the sampled environments and the target draws arms
    from the channel row of each sample. Clamped at zero so downstream ratio
    minimization never sees a negative numerator.
    """
    arr, chan = _check_samples_channel(samples, target)
    target_value = float(np.mean(np.sum(chan * arr, axis=1)))
    arm_values = arr.mean(axis=0)
    return np.maximum(0.0, target_value - arm_values)


def variance_info_gain(samples: np.ndarray, target: BASolution) -> np.ndarray:
    """Variance proxy for information gain about the target action.

    For each arm ``a``, the variance over target actions of the conditional
    posterior-mean reward: ``v(a) = sum_t q(t) * (E[mean(a) | target = t] -
    E[mean(a)])**2``, skipping targets with ``q(t) = 0``.
    """
    arr, chan = _check_samples_channel(samples, target)
    z = arr.shape[0]
    q = target.marginal.probs
    base = arr.mean(axis=0)
    weighted = chan.T @ arr / z
    gains = np.zeros(arr.shape[1])
    active = q > 0
    cond = weighted[active] / q[active, None]
    gains += (q[active, None] * (cond - base[None, :]) ** 2).sum(axis=0)
    return gains


def information_ratio(
    probs: np.ndarray, delta: np.ndarray, v: np.ndarray
) -> float:
    """Squared expected shortfall over expected information gain.

    Zero shortfall gives ratio 0 regardless of gain; positive shortfall with
    zero gain gives ``math.inf``.
    """
    num = float(np.dot(probs, delta))
    den = float(np.dot(probs, v))
    return _ratio(num, den)


def minimize_information_ratio(
    delta: np.ndarray, v: np.ndarray
) -> ActionDistribution:
    """Minimize the information ratio over arm distributions.

    Some minimizer is always supported on at most two arms, so this scans
    all singletons and all arm pairs, solving each pair's one-dimensional
    problem in closed form. If every gain is zero, falls back to a point
    mass on the smallest shortfall (lowest index on ties).
    """
    delta = np.asarray(delta, dtype=float)
    v = np.asarray(v, dtype=float)
    if delta.shape != v.shape or delta.ndim != 1 or delta.size == 0:
        raise ValidationError("delta and v must be matching nonempty vectors")
    if np.any(delta < 0) or np.any(v < 0):
        raise ValidationError("delta and v must be nonnegative")
    n = delta.shape[0]
    if float(v.max(initial=0.0)) <= _V_FLOOR:
        probs = np.zeros(n)
        probs[int(np.argmin(delta))] = 1.0
        return ActionDistribution(probs)

    best_ratio = math.inf
    best_i, best_j, best_w = 0, 0, 1.0
    for i in range(n):
        r = _ratio(float(delta[i]), float(v[i]))
        if r < best_ratio:
            best_ratio, best_i, best_j, best_w = r, i, i, 1.0
    for i in range(n):
        for j in range(i + 1, n):
            w, r = _best_pair_weight(
                float(delta[i]), float(delta[j]), float(v[i]), float(v[j])
            )
            if r < best_ratio:
                best_ratio, best_i, best_j, best_w = r, i, j, w
    probs = np.zeros(n)
    probs[best_i] += best_w
    probs[best_j] += 1.0 - best_w
    return ActionDistribution(probs)


def adaptive_beta(samples: np.ndarray, beta_max: float = 1e6) -> float:
    """Inverse minimized information ratio of the optimal-arm target.

    Measures how favorably regret currently trades against information: a
    small minimized ratio means information is cheap, so the target can
    afford to be ambitious (large ``beta``). Capped at ``beta_max``, which
    also covers fully concentrated posteriors (ratio 0).
    """
    if not (beta_max > 0):
        raise ValidationError("beta_max must be positive")
    target = optimal_action_channel(samples)
    arr = _check_samples(samples, min_z=1)
    delta = expected_regret_vector(arr, target)
    v = variance_info_gain(arr, target)
    if float(v.max(initial=0.0)) <= _V_FLOOR:
        return float(beta_max)
    dist = minimize_information_ratio(delta, v)
    ratio = information_ratio(dist.probs, delta, v)
    if ratio <= 1e-12:
        return float(beta_max)
    return float(min(1.0 / ratio, beta_max))


# --- sample-based agents ------------------------------------------------------


def blasts_action(
    state: PosteriorState, cfg: AgentConfig, rng: np.random.Generator
) -> int:
    """Probability-match against the rate-distortion target channel.

    Draws ``z`` posterior samples, solves for the target channel at
    ``cfg.beta``, picks one sample uniformly, and plays an arm from that
    sample's channel row (marginally, a draw from the target marginal).
    """
    samples = sample_posterior_means(state, cfg.z, rng)
    beta = _resolve_beta(cfg, samples)
    solution = target_channel(samples, beta, cfg.ba_cfg)
    idx = int(rng.integers(samples.shape[0]))
    return _categorical(solution.channel[idx], rng)


def vids_distribution(samples: np.ndarray) -> ActionDistribution:
    """Ratio-minimizing arm distribution toward the optimal-arm target."""
    arr = _check_samples(samples, min_z=2)
    return _directed_distribution(arr, optimal_action_channel(arr))


def vids_action(
    state: PosteriorState, cfg: AgentConfig, rng: np.random.Generator
) -> int:
    """Variance information-directed sampling toward the optimal arm."""
    samples = sample_posterior_means(state, cfg.z, rng)
    return vids_distribution(samples).sample(rng)


def vblaids_distribution(
    samples: np.ndarray, beta: float, ba_cfg: BAConfig | None = None
) -> ActionDistribution:
    """Ratio-minimizing arm distribution toward the ``beta`` target channel."""
    arr = _check_samples(samples, min_z=2)
    return _directed_distribution(arr, target_channel(arr, beta, ba_cfg or BAConfig()))


def vblaids_action(
    state: PosteriorState, cfg: AgentConfig, rng: np.random.Generator
) -> int:
    """Variance information-directed sampling toward the trade-off target."""
    samples = sample_posterior_means(state, cfg.z, rng)
    beta = _resolve_beta(cfg, samples)
    return vblaids_distribution(samples, beta, cfg.ba_cfg).sample(rng)


# --- internals ---------------------------------------------------------------


def _check_samples(samples: np.ndarray, min_z: int) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < min_z or arr.shape[1] < 1:
        raise ValidationError(
            f"samples must be a (z >= {min_z}, n_arms) matrix, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError("sampled means must be finite")
    return arr


def _check_samples_channel(
    samples: np.ndarray, target: BASolution
) -> tuple[np.ndarray, np.ndarray]:
    arr = _check_samples(samples, min_z=1)
    chan = np.asarray(target.channel, dtype=float)
    if chan.shape != arr.shape:
        raise ValidationError(
            f"target channel shape {chan.shape} does not match samples {arr.shape}"
        )
    return arr, chan


def _directed_distribution(arr: np.ndarray, target: BASolution) -> ActionDistribution:
    delta = expected_regret_vector(arr, target)
    v = variance_info_gain(arr, target)
    if float(v.max(initial=0.0)) <= _V_FLOOR:
        # No information signal anywhere: play greedily on the sampled means.
        probs = np.zeros(arr.shape[1])
        probs[int(np.argmax(arr.mean(axis=0)))] = 1.0
        return ActionDistribution(probs)
    return minimize_information_ratio(delta, v)


def _resolve_beta(cfg: AgentConfig, samples: np.ndarray) -> float:
    if cfg.beta == ADAPTIVE:
        return adaptive_beta(samples, cfg.beta_max)
    return float(cfg.beta)


def _ratio(num: float, den: float) -> float:
    if num <= 0.0:
        return 0.0
    if den <= 0.0:
        return math.inf
    return num * num / den


def _best_pair_weight(
    di: float, dj: float, vi: float, vj: float
) -> tuple[float, float]:
    """Best weight on arm ``i`` for a two-arm mixture, with its ratio.

    Minimizes ``(w*di + (1-w)*dj)**2 / (w*vi + (1-w)*vj)`` over ``w`` in
    ``[0, 1]``; the interior stationary point is solved exactly.
    """
    b = di - dj
    e = vi - vj
    candidates = [0.0, 1.0]
    if b != 0.0 and e != 0.0:
        w = (e * dj - 2.0 * b * vj) / (b * e)
        if 0.0 < w < 1.0:
            candidates.append(w)
    best_w, best_r = 0.0, math.inf
    for w in candidates:
        r = _ratio(w * di + (1.0 - w) * dj, w * vi + (1.0 - w) * vj)
        if r < best_r:
            best_w, best_r = w, r
    return best_w, best_r


def _categorical(probs: np.ndarray, rng: np.random.Generator) -> int:
    cum = np.cumsum(probs)
    idx = int(np.searchsorted(cum, rng.random(), side="right"))
    return min(idx, probs.shape[0] - 1)
