"""Bayesian bandit environments with conjugate posteriors.

Two families: Bernoulli rewards with per-arm Beta priors, and Gaussian
rewards with known noise variance and per-arm Normal priors. Posterior
states are immutable values; updates return new states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .info_theory import ValidationError
from .rd_solver import DistortionMatrix

BERNOULLI = "bernoulli"
GAUSSIAN = "gaussian"


def _arm_array(value: float | Sequence[float], n_arms: int, what: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(n_arms, float(arr))
    if arr.shape != (n_arms,):
        raise ValidationError(f"{what} must be a scalar or length-{n_arms} sequence")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} must be finite")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class BanditSpec:
    """Environment family, arm count, and per-arm prior parameters."""

    kind: str
    n_arms: int
    prior_alpha: np.ndarray | None = None
    prior_beta: np.ndarray | None = None
    prior_mean: np.ndarray | None = None
    prior_var: np.ndarray | None = None
    noise_var: float | None = None

    def __post_init__(self) -> None:
        if self.n_arms < 1:
            raise ValidationError("n_arms must be at least 1")
        if self.kind == BERNOULLI:
            if self.prior_alpha is None or self.prior_beta is None:
                raise ValidationError("bernoulli specs need prior_alpha and prior_beta")
            alpha = _arm_array(self.prior_alpha, self.n_arms, "prior_alpha")
            beta = _arm_array(self.prior_beta, self.n_arms, "prior_beta")
            if np.any(alpha <= 0) or np.any(beta <= 0):
                raise ValidationError("Beta prior parameters must be positive")
            object.__setattr__(self, "prior_alpha", alpha)
            object.__setattr__(self, "prior_beta", beta)
        elif self.kind == GAUSSIAN:
            if self.prior_mean is None or self.prior_var is None:
                raise ValidationError("gaussian specs need prior_mean and prior_var")
            mean = _arm_array(self.prior_mean, self.n_arms, "prior_mean")
            var = _arm_array(self.prior_var, self.n_arms, "prior_var")
            if np.any(var <= 0):
                raise ValidationError("prior variances must be positive")
            if self.noise_var is None or not (self.noise_var > 0):
                raise ValidationError("gaussian specs need a positive noise_var")
            object.__setattr__(self, "prior_mean", mean)
            object.__setattr__(self, "prior_var", var)
            object.__setattr__(self, "noise_var", float(self.noise_var))
        else:
            raise ValidationError(f"unknown bandit kind {self.kind!r}")

    @classmethod
    def bernoulli(
        cls, n_arms: int, alpha: float | Sequence[float] = 1.0,
        beta: float | Sequence[float] = 1.0,
    ) -> "BanditSpec":
        return cls(kind=BERNOULLI, n_arms=n_arms, prior_alpha=alpha, prior_beta=beta)

    @classmethod
    def gaussian(
        cls, n_arms: int, mean: float | Sequence[float] = 0.0,
        var: float | Sequence[float] = 1.0, noise_var: float = 0.1,
    ) -> "BanditSpec":
        return cls(
            kind=GAUSSIAN, n_arms=n_arms, prior_mean=mean, prior_var=var,
            noise_var=noise_var,
        )


@dataclass(frozen=True)
class EnvironmentRealization:
    """True per-arm mean rewards for one sampled environment."""

    mean_rewards: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.mean_rewards, dtype=float)
        if arr.ndim != 1 or arr.size == 0 or not np.all(np.isfinite(arr)):
            raise ValidationError("mean_rewards must be a finite 1-D array")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "mean_rewards", arr)


@dataclass(frozen=True)
class BetaPosterior:
    """Per-arm Beta(alpha, beta) posterior for Bernoulli rewards."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self) -> None:
        alpha = _arm_array(self.alpha, np.asarray(self.alpha).shape[0], "alpha")
        beta = _arm_array(self.beta, alpha.shape[0], "beta")
        if np.any(alpha <= 0) or np.any(beta <= 0):
            raise ValidationError("Beta posterior parameters must be positive")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def n_arms(self) -> int:
        return self.alpha.shape[0]


@dataclass(frozen=True)
class GaussianPosterior:
    """Per-arm Normal posterior for Gaussian rewards with known noise."""

    mean: np.ndarray
    var: np.ndarray
    noise_var: float

    def __post_init__(self) -> None:
        mean = _arm_array(self.mean, np.asarray(self.mean).shape[0], "mean")
        var = _arm_array(self.var, mean.shape[0], "var")
        if np.any(var <= 0) or not (self.noise_var > 0):
            raise ValidationError("variances must be positive")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "noise_var", float(self.noise_var))

    @property
    def n_arms(self) -> int:
        return self.mean.shape[0]


PosteriorState = Union[BetaPosterior, GaussianPosterior]


def initial_posterior(spec: BanditSpec) -> PosteriorState:
    """Posterior equal to the prior, before any observations."""
    if spec.kind == BERNOULLI:
        return BetaPosterior(spec.prior_alpha, spec.prior_beta)
    return GaussianPosterior(spec.prior_mean, spec.prior_var, spec.noise_var)


def sample_environment(spec: BanditSpec, rng: np.random.Generator) -> EnvironmentRealization:
    """Draw one environment (a vector of true arm means) from the prior."""
    if spec.kind == BERNOULLI:
        means = rng.beta(spec.prior_alpha, spec.prior_beta)
    else:
        means = spec.prior_mean + np.sqrt(spec.prior_var) * rng.standard_normal(spec.n_arms)
    return EnvironmentRealization(means)


def sample_reward(
    env: EnvironmentRealization, arm: int, spec: BanditSpec, rng: np.random.Generator
) -> float:
    """Draw one reward for pulling ``arm`` in environment ``env``."""
    if not (0 <= arm < spec.n_arms):
        raise ValidationError(f"arm {arm} out of range for {spec.n_arms} arms")
    mean = float(env.mean_rewards[arm])
    if spec.kind == BERNOULLI:
        return float(rng.random() < mean)
    return mean + math.sqrt(spec.noise_var) * float(rng.standard_normal())


def update_posterior(state: PosteriorState, arm: int, reward: float) -> PosteriorState:
    """Conjugate posterior update after observing ``reward`` on ``arm``."""
    if not (0 <= arm < state.n_arms):
        raise ValidationError(f"arm {arm} out of range for {state.n_arms} arms")
    if isinstance(state, BetaPosterior):
        if reward not in (0.0, 1.0):
            raise ValidationError("Bernoulli rewards must be 0 or 1")
        alpha = state.alpha.copy()
        beta = state.beta.copy()
        alpha[arm] += reward
        beta[arm] += 1.0 - reward
        return BetaPosterior(alpha, beta)
    if not math.isfinite(reward):
        raise ValidationError("rewards must be finite")
    # Precision-weighted update: precisions add, means average by precision.
    mean = state.mean.copy()
    var = state.var.copy()
    prior_precision = 1.0 / var[arm]
    noise_precision = 1.0 / state.noise_var
    post_var = 1.0 / (prior_precision + noise_precision)
    mean[arm] = post_var * (mean[arm] * prior_precision + reward * noise_precision)
    var[arm] = post_var
    return GaussianPosterior(mean, var, state.noise_var)


def sample_posterior_means(
    state: PosteriorState, z: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``z`` joint environment realizations from the posterior.

    Returns a ``(z, n_arms)`` array, one realization of all arm means per row.
    """
    if z < 1:
        raise ValidationError("z must be at least 1")
    if isinstance(state, BetaPosterior):
        return rng.beta(state.alpha, state.beta, size=(z, state.n_arms))
    return state.mean + np.sqrt(state.var) * rng.standard_normal((z, state.n_arms))


def squared_regret_distortion(
    samples: np.ndarray, actions: Sequence[int] | None = None
) -> DistortionMatrix:
    """Squared-regret distortion between sampled environments and actions.

    ``d(e, a) = (max_mean(e) - mean_e(a))**2`` for each sampled environment
    row ``e``; rows are labeled by sample index, columns by action.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ValidationError("samples must be a nonempty (z, n_arms) array")
    n_arms = arr.shape[1]
    if actions is None:
        actions = range(n_arms)
    actions = tuple(int(a) for a in actions)
    if any(a < 0 or a >= n_arms for a in actions):
        raise ValidationError("actions must index arms of the sample matrix")
    best = arr.max(axis=1, keepdims=True)
    gaps = best - arr[:, actions]
    return DistortionMatrix(
        rows=tuple(range(arr.shape[0])), cols=actions, d=gaps * gaps
    )
