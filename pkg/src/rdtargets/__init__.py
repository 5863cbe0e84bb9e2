"""Rate-distortion learning targets for multi-armed bandits."""

from .info_theory import (
    Distribution,
    JointDistribution,
    ValidationError,
    entropy,
    kl_divergence,
    log_sum_exp,
    mutual_information,
)
from .rd_solver import (
    BAConfig,
    BASolution,
    DistortionMatrix,
    blahut_arimoto,
    objective_value,
    rate_at_distortion,
    rd_curve,
)
from .estimation import (
    AlphabetSizes,
    min_positive_distortion,
    phi,
    phi_inverse,
    rate_deviation_bound,
    required_samples,
)
from .bandit import (
    BanditSpec,
    BetaPosterior,
    EnvironmentRealization,
    GaussianPosterior,
    initial_posterior,
    sample_environment,
    sample_posterior_means,
    sample_reward,
    squared_regret_distortion,
    update_posterior,
)
from .agents import (
    ADAPTIVE,
    ActionDistribution,
    AgentConfig,
    adaptive_beta,
    blasts_action,
    expected_regret_vector,
    information_ratio,
    minimize_information_ratio,
    optimal_action_channel,
    sts_action,
    target_channel,
    thompson_action,
    variance_info_gain,
    vblaids_action,
    vblaids_distribution,
    vids_action,
    vids_distribution,
)
from .harness import (
    AgentRun,
    ConfigError,
    ExperimentConfig,
    RDPoint,
    SummaryPoint,
    TrialRecord,
    compare_targets,
    load_config,
    read_records,
    run_experiment,
    summarize,
    write_rd_points,
    write_records,
)

__all__ = [name for name in dir() if not name.startswith("_")]
