"""
Bayesian GARCH(1,1)-in-Mean models with skewed Student-t innovations.

The main entry points are :func:`simulate` and :func:`log_likelihood` for
the observation model, :func:`rwm_sample` for posterior sampling and
:func:`estimate_log_marginal` / :func:`comparison_report` for comparing
skewing mechanisms by their marginal likelihoods.
"""

from __future__ import annotations

from .data import (
    DataError,
    ExcessReturnSeries,
    PriceSeries,
    RiskFreeSeries,
    compute_excess_returns,
    load_excess_returns,
    load_series,
    save_excess_returns,
)
from .distributions import (
    MODEL_IDS,
    Mechanism,
    SkewedStudentT,
    SkewMechanism,
    mean_exists,
    mechanism_from_model_id,
    sample,
    skew_weight,
    skewed_logpdf,
    skewed_mean,
    skewed_pdf,
    t_cdf,
    t_logpdf,
    t_pdf,
    t_quantile,
)
from .garch import GarchParams, garch_filter, log_likelihood, simulate
from .inference import (
    GarchMPosterior,
    PosteriorChain,
    PriorSpec,
    SamplerConfig,
    log_posterior_kernel,
    metropolis,
    risk_premium_summary,
    rwm_sample,
)
from .model_selection import (
    ModelEvidence,
    bridge_sampling,
    comparison_report,
    estimate_log_marginal,
    importance_sampling,
    posterior_model_probs,
)

__version__ = "0.1.0"

__all__ = [
    "DataError",
    "ExcessReturnSeries",
    "PriceSeries",
    "RiskFreeSeries",
    "compute_excess_returns",
    "load_excess_returns",
    "load_series",
    "save_excess_returns",
    "MODEL_IDS",
    "Mechanism",
    "SkewedStudentT",
    "SkewMechanism",
    "mean_exists",
    "mechanism_from_model_id",
    "sample",
    "skew_weight",
    "skewed_logpdf",
    "skewed_mean",
    "skewed_pdf",
    "t_cdf",
    "t_logpdf",
    "t_pdf",
    "t_quantile",
    "GarchParams",
    "garch_filter",
    "log_likelihood",
    "simulate",
    "GarchMPosterior",
    "PosteriorChain",
    "PriorSpec",
    "SamplerConfig",
    "log_posterior_kernel",
    "metropolis",
    "risk_premium_summary",
    "rwm_sample",
    "ModelEvidence",
    "bridge_sampling",
    "comparison_report",
    "estimate_log_marginal",
    "importance_sampling",
    "posterior_model_probs",
]
