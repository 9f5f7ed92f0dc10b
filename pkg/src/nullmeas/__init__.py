"""Information measures, rates and threshold times of null-result weak measurements."""

__version__ = "0.1.0"

from ._validation import (
    DegenerateInputError,
    DegenerateOutcomeError,
    InvalidDistributionError,
    check_distribution,
    check_tau,
)
from .estimators import NullResultTransformer
from .information import (
    InfoSnapshot,
    conditional_entropy,
    fidelity,
    info_curves,
    info_gain,
    mutual_information,
    relative_entropy,
    reversal_probability,
    shannon_entropy,
    snapshot,
)
from .measurement import (
    OutcomeEnsemble,
    null_probability,
    outcome_ensemble,
    posterior_click,
    posterior_null,
)
from .montecarlo import McConfig, McEstimate, mc_validate, run_mc
from .rates import (
    RateLimits,
    RateSnapshot,
    finite_difference,
    rate_curves,
    rate_fidelity,
    rate_info_gain,
    rate_limits,
    rate_reversal,
    rate_snapshot,
)
from .scan import ScanConfig, emit_figure_data, emit_tables, run_scan, verify_tables
from .thresholds import (
    ThresholdReport,
    find_threshold,
    info_gain_threshold,
    reproduce_tables,
    threshold_report,
)


__all__ = [
    "DegenerateInputError",
    "DegenerateOutcomeError",
    "InvalidDistributionError",
    "check_distribution",
    "check_tau",
    "NullResultTransformer",
    "InfoSnapshot",
    "conditional_entropy",
    "fidelity",
    "info_curves",
    "info_gain",
    "mutual_information",
    "relative_entropy",
    "reversal_probability",
    "shannon_entropy",
    "snapshot",
    "OutcomeEnsemble",
    "null_probability",
    "outcome_ensemble",
    "posterior_click",
    "posterior_null",
    "McConfig",
    "McEstimate",
    "mc_validate",
    "run_mc",
    "RateLimits",
    "RateSnapshot",
    "finite_difference",
    "rate_curves",
    "rate_fidelity",
    "rate_info_gain",
    "rate_limits",
    "rate_reversal",
    "rate_snapshot",
    "ScanConfig",
    "emit_figure_data",
    "emit_tables",
    "run_scan",
    "verify_tables",
    "ThresholdReport",
    "find_threshold",
    "info_gain_threshold",
    "reproduce_tables",
    "threshold_report",
]
