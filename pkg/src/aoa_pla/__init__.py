"""AoA-based physical layer authentication and impersonation analysis."""

from .arrays import (
    ArrayGeometry,
    AttackerConfig,
    NoiseModel,
    SignalBlock,
    derive_rng,
    steering_vector,
    synthesize_attack,
    synthesize_legitimate,
)
from .attack import (
    AggregatePrecoder,
    MseBreakdown,
    OptimalSinglePrecoder,
    OptimumCheck,
    TwoAntennaCoefficients,
    aggregate_precoder,
    dirichlet_ratio,
    gram_matrix,
    monte_carlo_mse,
    mse_closed_form,
    mse_delta_single,
    mse_gradient_single,
    multi_optimum_condition,
    optimal_single_precoder,
    two_antenna_coefficients,
)
from .auth import (
    AoaProfile,
    AuthDecision,
    default_threshold,
    enroll,
    far_frr_sweep,
    load_acl,
    save_acl,
    verify,
)
from .experiments import (
    CheckResult,
    ExperimentConfig,
    FIGURE_IDS,
    ResultTable,
    emit_plot,
    evaluate_checks,
    reproduce,
    run_figure,
    write_csv,
)
from .music import (
    DEFAULT_GRID_STEP,
    DegenerateSpectrumError,
    MusicSpectrum,
    NonHermitianError,
    estimate_aoa,
    hermitian_eig,
    pseudospectrum,
    sample_covariance,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "AttackerConfig",
    "NoiseModel",
    "SignalBlock",
    "derive_rng",
    "steering_vector",
    "synthesize_attack",
    "synthesize_legitimate",
    "AggregatePrecoder",
    "MseBreakdown",
    "OptimalSinglePrecoder",
    "OptimumCheck",
    "TwoAntennaCoefficients",
    "aggregate_precoder",
    "dirichlet_ratio",
    "gram_matrix",
    "monte_carlo_mse",
    "mse_closed_form",
    "mse_delta_single",
    "mse_gradient_single",
    "multi_optimum_condition",
    "optimal_single_precoder",
    "two_antenna_coefficients",
    "AoaProfile",
    "AuthDecision",
    "default_threshold",
    "enroll",
    "far_frr_sweep",
    "load_acl",
    "save_acl",
    "verify",
    "CheckResult",
    "ExperimentConfig",
    "FIGURE_IDS",
    "ResultTable",
    "emit_plot",
    "evaluate_checks",
    "reproduce",
    "run_figure",
    "write_csv",
    "DEFAULT_GRID_STEP",
    "DegenerateSpectrumError",
    "MusicSpectrum",
    "NonHermitianError",
    "estimate_aoa",
    "hermitian_eig",
    "pseudospectrum",
    "sample_covariance",
    "__version__",
]
