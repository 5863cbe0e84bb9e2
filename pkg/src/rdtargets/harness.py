"""Seeded bandit experiments with CSV persistence.

A run is fully determined by its config: every random draw comes from a
named substream of the master seed, keyed by trial and purpose. Reward noise
is keyed by ``(trial, arm, pull count)`` and shared across agents, so agents
within a trial face identical environments and paired reward draws, while
each agent's own decision randomness lives on a private stream (keyed by the
agent token, not list position).
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .agents import (
    ADAPTIVE,
    AgentConfig,
    blasts_action,
    sts_action,
    thompson_action,
    vblaids_action,
    vids_action,
)
from .bandit import (
    BERNOULLI,
    GAUSSIAN,
    BanditSpec,
    initial_posterior,
    sample_environment,
    sample_posterior_means,
    squared_regret_distortion,
    update_posterior,
)
from .info_theory import Distribution, JointDistribution, mutual_information
from .rd_solver import BAConfig, rd_curve


class ConfigError(ValueError):
    """A malformed experiment config or CLI input."""


# Substream purposes under the master seed.
_ENV, _REWARDS, _AGENT, _COMPARE = 0, 1, 2, 3

AGENT_FAMILIES = ("ts", "sts", "blasts", "vids", "vblaids")
_PARAM_FREE = {"ts", "vids"}

REGRET_HEADER = ("agent", "param", "trial", "period", "regret", "cum_regret")
RD_HEADER = ("method", "param", "rate_bits", "distortion")


@dataclass(frozen=True)
class AgentRun:
    """One agent entry of a run: family name plus its parameter text."""

    family: str
    param: str = ""

    def __post_init__(self) -> None:
        if self.family not in AGENT_FAMILIES:
            raise ConfigError(f"unknown agent family {self.family!r}")
        if self.family in _PARAM_FREE:
            if self.param:
                raise ConfigError(f"agent {self.family!r} takes no parameter")
        else:
            if not self.param:
                raise ConfigError(f"agent {self.family!r} needs a parameter")
            if self.family == "sts":
                _parse_nonneg_real(self.param, "sts epsilon")
            elif self.param != ADAPTIVE:
                _parse_nonneg_real(self.param, f"{self.family} beta")

    @property
    def token(self) -> str:
        return f"{self.family}:{self.param}" if self.param else self.family


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce a regret run."""

    spec: BanditSpec
    horizon: int
    trials: int
    master_seed: int
    agents: tuple[AgentRun, ...]
    z: int = 16
    beta_max: float = 1e6
    ba_cfg: BAConfig = field(default_factory=BAConfig)
    output_path: str = "regret.csv"

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ConfigError("horizon must be at least 1")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if self.z < 1:
            raise ConfigError("z must be at least 1")
        if not self.agents:
            raise ConfigError("at least one agent is required")
        tokens = [a.token for a in self.agents]
        if len(set(tokens)) != len(tokens):
            raise ConfigError("duplicate agent entries")


@dataclass(frozen=True)
class TrialRecord:
    """One period of one agent's run in one trial."""

    agent: str
    param: str
    trial: int
    period: int
    regret: float
    cum_regret: float


@dataclass(frozen=True)
class SummaryPoint:
    """Across-trial mean cumulative regret with a 95% interval."""

    agent: str
    param: str
    period: int
    mean_cum_regret: float
    ci_low: float | None
    ci_high: float | None


@dataclass(frozen=True)
class RDPoint:
    """One rate-distortion point achieved by a target construction."""

    method: str
    param: float
    rate_bits: float
    distortion: float


def _stream(master_seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))

def _agent_stream_key(run: AgentRun) -> tuple[int, int]:
    digest = hashlib.sha256(run.token.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big"), int.from_bytes(digest[4:8], "big")


def _make_policy(
    run: AgentRun, cfg: ExperimentConfig
) -> Callable[[object, np.random.Generator], int]:
    agent_cfg = AgentConfig(
        z=cfg.z,
        beta=run.param if run.param == ADAPTIVE else (
            float(run.param) if run.family in ("blasts", "vblaids") else 1.0
        ),
        ba_cfg=cfg.ba_cfg,
        epsilon=float(run.param) if run.family == "sts" else 0.0,
        beta_max=cfg.beta_max,
    )
    if run.family == "ts":
        return lambda state, rng: thompson_action(state, rng)
    if run.family == "sts":
        return lambda state, rng: sts_action(state, agent_cfg.epsilon, rng)
    if run.family == "blasts":
        return lambda state, rng: blasts_action(state, agent_cfg, rng)
    if run.family == "vids":
        return lambda state, rng: vids_action(state, agent_cfg, rng)
    return lambda state, rng: vblaids_action(state, agent_cfg, rng)


def run_experiment(cfg: ExperimentConfig) -> list[TrialRecord]:
    """Run all agents over all trials, returning per-period regret records."""
    spec = cfg.spec
    records: list[TrialRecord] = []
    policies = [(run, _make_policy(run, cfg)) for run in cfg.agents]
    for trial in range(cfg.trials):
        env = sample_environment(spec, _stream(cfg.master_seed, _ENV, trial))
        means = env.mean_rewards
        best = float(means.max())
        noise = _stream(cfg.master_seed, _REWARDS, trial)
        if spec.kind == BERNOULLI:
            shocks = noise.random((spec.n_arms, cfg.horizon))
        else:
            shocks = noise.standard_normal((spec.n_arms, cfg.horizon))
        for run, policy in policies:
            w1, w2 = _agent_stream_key(run)
            rng = _stream(cfg.master_seed, _AGENT, trial, w1, w2)
            state = initial_posterior(spec)
            pulls = np.zeros(spec.n_arms, dtype=int)
            cum = 0.0
            for period in range(1, cfg.horizon + 1):
                arm = policy(state, rng)
                k = pulls[arm]
                pulls[arm] += 1
                if spec.kind == BERNOULLI:
                    reward = 1.0 if shocks[arm, k] < means[arm] else 0.0
                else:
                    reward = float(means[arm]) + math.sqrt(spec.noise_var) * float(
                        shocks[arm, k]
                    )
                state = update_posterior(state, arm, reward)
                regret = best - float(means[arm])
                cum += regret
                records.append(
                    TrialRecord(run.family, run.param, trial, period, regret, cum)
                )
    return records


def summarize(records: Sequence[TrialRecord]) -> list[SummaryPoint]:
    """Mean cumulative regret per (agent, param, period) with 95% intervals.

    The interval is ``mean +/- 1.96 * sd / sqrt(trials)`` using the sample
    standard deviation; single-trial groups get no interval.
    """
    groups: dict[tuple[str, str, int], list[float]] = {}
    for rec in records:
        groups.setdefault((rec.agent, rec.param, rec.period), []).append(
            rec.cum_regret
        )
    points = []
    for (agent, param, period), values in sorted(groups.items()):
        mean = float(np.mean(values))
        if len(values) > 1:
            half = 1.96 * float(np.std(values, ddof=1)) / math.sqrt(len(values))
            points.append(SummaryPoint(agent, param, period, mean, mean - half, mean + half))
        else:
            points.append(SummaryPoint(agent, param, period, mean, None, None))
    return points


def compare_targets(
    spec: BanditSpec,
    betas: Sequence[float],
    epsilons: Sequence[float],
    z: int,
    seed: int,
    ba_cfg: BAConfig | None = None,
) -> list[RDPoint]:
    """Rate-distortion points of trade-off targets versus satisficing targets.

    Draws ``z`` environments from the prior once. Trade-off points come from
    the solver at each ``beta``; satisficing points use the deterministic
    channel sending each sample to its first arm within ``epsilon`` of that
    sample's optimum, with rate measured as the mutual information of the
    induced joint.
    """
    if z < 1:
        raise ConfigError("z must be at least 1")
    rng = _stream(seed, _COMPARE)
    samples = sample_posterior_means(initial_posterior(spec), z, rng)
    dist = squared_regret_distortion(samples)
    source = Distribution.uniform(tuple(range(z)))
    points = [
        RDPoint("ba", float(sol.beta), sol.rate, sol.distortion)
        for sol in rd_curve(source, dist, list(betas), ba_cfg)
    ]
    d = dist.d
    for eps in epsilons:
        if not (eps >= 0):
            raise ConfigError("epsilons must be nonnegative")
        thresholds = samples.max(axis=1, keepdims=True) - eps
        chosen = np.argmax(samples >= thresholds, axis=1)
        mass = np.zeros((z, spec.n_arms))
        mass[np.arange(z), chosen] = 1.0 / z
        joint = JointDistribution(
            tuple(range(z)), tuple(range(spec.n_arms)), mass
        )
        rate = mutual_information(joint)
        distortion = float(np.mean(d[np.arange(z), chosen]))
        points.append(RDPoint("sts", float(eps), rate, distortion))
    return points


# --- CSV persistence ----------------------------------------------------------


def write_records(records: Sequence[TrialRecord], path: str) -> None:
    """Write regret records as CSV, sorted for deterministic output.

    Floats are written with ``repr`` so values round-trip exactly; the file
    is UTF-8 with LF line endings.
    """
    ordered = sorted(records, key=lambda r: (r.agent, r.param, r.trial, r.period))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(REGRET_HEADER)
        for rec in ordered:
            writer.writerow(
                (
                    rec.agent,
                    rec.param,
                    rec.trial,
                    rec.period,
                    repr(float(rec.regret)),
                    repr(float(rec.cum_regret)),
                )
            )


def read_records(path: str) -> list[TrialRecord]:
    """Read back a regret CSV produced by ``write_records``."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = tuple(next(reader, ()))
        if header != REGRET_HEADER:
            raise ConfigError(
                f"unexpected regret CSV header {header!r} in {path}"
            )
        records = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(REGRET_HEADER):
                raise ConfigError(f"{path}:{line_no}: expected 6 fields")
            agent, param, trial, period, regret, cum = row
            records.append(
                TrialRecord(
                    agent, param, int(trial), int(period), float(regret), float(cum)
                )
            )
    return records


def write_rd_points(points: Sequence[RDPoint], path: str) -> None:
    """Write rate-distortion comparison points as CSV."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RD_HEADER)
        for pt in points:
            writer.writerow(
                (
                    pt.method,
                    repr(float(pt.param)),
                    repr(float(pt.rate_bits)),
                    repr(float(pt.distortion)),
                )
            )


# --- config files -------------------------------------------------------------

_REQUIRED_KEYS = ("kind", "arms", "horizon", "trials", "seed", "agents")
_OPTIONAL_KEYS = (
    "z",
    "prior_alpha",
    "prior_beta",
    "prior_mean",
    "prior_var",
    "noise_var",
    "beta_max",
    "ba_tol",
    "ba_max_iters",
    "out",
)


def load_config(path: str) -> ExperimentConfig:
    """Parse a flat ``key = value`` config file into an ``ExperimentConfig``.

    Lines starting with ``#`` and blank lines are skipped. Unknown keys,
    duplicate keys, missing required keys, and malformed values raise
    ``ConfigError`` naming the offending key (and line where applicable).
    """
    values: dict[str, str] = {}
    lines: dict[str, int] = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw_lines = handle.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for line_no, raw in enumerate(raw_lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
            raise ConfigError(f"{path}:{line_no}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{line_no}: duplicate key {key!r}")
        if not value:
            raise ConfigError(f"{path}:{line_no}: empty value for {key!r}")
        values[key] = value
        lines[key] = line_no
    for key in _REQUIRED_KEYS:
        if key not in values:
            raise ConfigError(f"{path}: missing required key {key!r}")

    def bad(key: str, why: str) -> ConfigError:
        return ConfigError(f"{path}:{lines[key]}: {key}: {why}")

    def parse_int(key: str) -> int:
        try:
            return int(values[key])
        except ValueError:
            raise bad(key, f"expected an integer, got {values[key]!r}") from None

    def parse_float(key: str) -> float:
        try:
            return float(values[key])
        except ValueError:
            raise bad(key, f"expected a number, got {values[key]!r}") from None

    def parse_arm_values(key: str) -> float | list[float]:
        parts = [p.strip() for p in values[key].split(",")]
        try:
            parsed = [float(p) for p in parts]
        except ValueError:
            raise bad(key, f"expected numbers, got {values[key]!r}") from None
        return parsed[0] if len(parsed) == 1 else parsed

    kind = values["kind"]
    if kind not in (BERNOULLI, GAUSSIAN):
        raise bad("kind", f"must be {BERNOULLI!r} or {GAUSSIAN!r}")
    n_arms = parse_int("arms")
    try:
        if kind == BERNOULLI:
            spec = BanditSpec.bernoulli(
                n_arms,
                alpha=parse_arm_values("prior_alpha") if "prior_alpha" in values else 1.0,
                beta=parse_arm_values("prior_beta") if "prior_beta" in values else 1.0,
            )
        else:
            spec = BanditSpec.gaussian(
                n_arms,
                mean=parse_arm_values("prior_mean") if "prior_mean" in values else 0.0,
                var=parse_arm_values("prior_var") if "prior_var" in values else 1.0,
                noise_var=parse_float("noise_var") if "noise_var" in values else 0.1,
            )
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid bandit spec: {exc}") from exc

    agent_runs = []
    for token in values["agents"].split(","):
        token = token.strip()
        if not token:
            raise bad("agents", "empty agent entry")
        family, _, param = token.partition(":")
        try:
            agent_runs.append(AgentRun(family.strip(), param.strip()))
        except ConfigError as exc:
            raise bad("agents", str(exc)) from None

    try:
        ba_cfg = BAConfig(
            max_iters=parse_int("ba_max_iters") if "ba_max_iters" in values else 10_000,
            tol=parse_float("ba_tol") if "ba_tol" in values else 1e-9,
        )
        return ExperimentConfig(
            spec=spec,
            horizon=parse_int("horizon"),
            trials=parse_int("trials"),
            master_seed=parse_int("seed"),
            agents=tuple(agent_runs),
            z=parse_int("z") if "z" in values else 16,
            beta_max=parse_float("beta_max") if "beta_max" in values else 1e6,
            ba_cfg=ba_cfg,
            output_path=values.get("out", "regret.csv"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid config: {exc}") from exc


def with_overrides(
    cfg: ExperimentConfig, seed: int | None = None, out: str | None = None
) -> ExperimentConfig:
    """Apply CLI overrides to a loaded config."""
    if seed is not None:
        cfg = replace(cfg, master_seed=seed)
    if out is not None:
        cfg = replace(cfg, output_path=out)
    return cfg


def _parse_nonneg_real(text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{what} must be a number, got {text!r}") from None
    if not (math.isfinite(value) and value >= 0):
        raise ConfigError(f"{what} must be finite and nonnegative")
    return value
