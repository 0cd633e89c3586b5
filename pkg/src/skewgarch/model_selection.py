"""
Marginal likelihoods and posterior model probabilities.

Evidence is reported as decimal logarithms ``log10 p(y | M)``; natural logs
are used internally.
"""

from __future__ import annotations

import csv
import json
import math
import os
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import special, stats

from .data import ExcessReturnSeries
from .distributions import Mechanism
from .garch import InitPolicy
from .inference import (
    GarchMPosterior,
    PosteriorChain,
    PriorSpec,
    effective_sample_size,
)

__all__ = [
    "EstimatorError",
    "ModelEvidence",
    "ModelComparison",
    "LogMarginal",
    "bridge_sampling",
    "importance_sampling",
    "estimate_log_marginal",
    "posterior_model_probs",
    "comparison_report",
    "write_report",
    "TABLE_ORDER",
]

LN10 = math.log(10.0)
# column order used by the comparison report: skewed models first, symmetric last
TABLE_ORDER = ("M1", "M2", "M3", "M4", "M5", "M6", "M0")


class EstimatorError(RuntimeError):
    """The marginal-likelihood estimator failed to converge."""


@dataclass(frozen=True)
class LogMarginal:
    """Natural-log marginal likelihood estimate with its Monte Carlo error."""

    log_marginal: float
    mc_se: float
    iterations: int
    method: str


def _log_mean_exp(x: np.ndarray) -> float:
    return float(special.logsumexp(x) - math.log(x.size))


def _eval_kernel(log_kernel: Callable[[np.ndarray], float], points: np.ndarray) -> np.ndarray:
    return np.array([log_kernel(p) for p in points], dtype=float)


def _gaussian_fit(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    mean = samples.mean(axis=0)
    cov = np.atleast_2d(np.cov(samples, rowvar=False))
    cov += np.eye(cov.shape[0]) * 1e-12 * max(1.0, float(np.mean(np.diag(cov))))
    return mean, cov, np.linalg.cholesky(cov)


def bridge_sampling(
    log_kernel: Callable[[np.ndarray], float],
    samples: np.ndarray,
    *,
    seed: int = 0,
    n_proposal: int | None = None,
    log_kernel_samples: np.ndarray | None = None,
    tol: float = 1e-10,
    max_iter: int = 1000,
) -> LogMarginal:
    """
    Iterative bridge-sampling estimate of ``log int exp(log_kernel)``.

    The first half of ``samples`` (posterior draws, one per row) fits a
    Gaussian proposal; the second half enters the Meng-Wong fixed-point
    iteration together with ``n_proposal`` proposal draws.  The reported
    standard error is the approximate relative mean-squared error of
    Fruhwirth-Schnatter, with the posterior term inflated by the
    autocorrelation of the chain.

    Parameters
    ----------
    log_kernel : callable
        Unnormalised log posterior on the same (unconstrained) scale as
        ``samples``.
    samples : ndarray, shape (n, d)
    seed : int
        Seed for the proposal draws.
    n_proposal : int, optional
        Number of proposal draws; defaults to the size of the second half.
    log_kernel_samples : ndarray, optional
        Precomputed ``log_kernel`` values for every row of ``samples``.

    Raises
    ------
    EstimatorError
        If the fixed-point iteration does not converge within ``max_iter``.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    n, d = samples.shape
    if n < 8:
        raise ValueError("bridge sampling needs at least 8 posterior draws")
    half = n // 2
    fit, post = samples[:half], samples[half:]
    n1 = post.shape[0]
    n2 = int(n_proposal or n1)
    mean, cov, chol = _gaussian_fit(fit)
    proposal_dist = stats.multivariate_normal(mean, cov)

    rng = np.random.default_rng(seed)
    prop = mean + rng.standard_normal((n2, d)) @ chol.T

    if log_kernel_samples is None:
        q11 = _eval_kernel(log_kernel, post)
    else:
        q11 = np.asarray(log_kernel_samples, dtype=float)[half:]
    q12 = np.atleast_1d(proposal_dist.logpdf(post))
    q21 = _eval_kernel(log_kernel, prop)
    q22 = np.atleast_1d(proposal_dist.logpdf(prop))
    invalid = np.isnan(q21) | (q21 == np.inf)
    if np.any(invalid) or not np.all(np.isfinite(q11)):
        raise EstimatorError(
            f"log kernel is NaN or +inf at {int(invalid.sum())} proposal draws"
            " or non-finite at posterior draws"
        )

    l1 = q11 - q12
    l2 = q21 - q22
    ess = min(float(n1), effective_sample_size(l1))
    s1 = ess / (ess + n2)
    s2 = n2 / (ess + n2)
    log_s1, log_s2 = math.log(s1), math.log(s2)
    lstar = float(np.median(l1))
    a1 = l1 - lstar
    a2 = l2 - lstar

    log_r = 0.0
    for it in range(1, max_iter + 1):
        log_num = a2 - np.logaddexp(log_s1 + a2, log_s2 + log_r)
        log_den = -np.logaddexp(log_s1 + a1, log_s2 + log_r)
        new = _log_mean_exp(log_num) - _log_mean_exp(log_den)
        if not math.isfinite(new):
            raise EstimatorError("bridge sampling produced a non-finite iterate")
        if abs(new - log_r) < tol:
            log_r = new
            break
        log_r = new
    else:
        raise EstimatorError(f"bridge sampling did not converge in {max_iter} iterations")
    logml = log_r + lstar

    # relative MSE; f1 on proposal draws, f2 on posterior draws
    t1, t2 = n1 / (n1 + n2), n2 / (n1 + n2)
    with np.errstate(over="ignore"):
        f1 = 1.0 / (t1 + t2 * np.exp(q22 - (q21 - logml)))
        f2 = 1.0 / (t1 * np.exp(q11 - logml - q12) + t2)
    term1 = np.var(f1, ddof=1) / np.mean(f1) ** 2 / n2
    ess_f2 = min(float(n1), effective_sample_size(f2))
    spec0 = np.var(f2, ddof=1) * n1 / ess_f2
    term2 = spec0 / np.mean(f2) ** 2 / n1
    return LogMarginal(logml, float(math.sqrt(term1 + term2)), it, "bridge")


def importance_sampling(
    log_kernel: Callable[[np.ndarray], float],
    samples: np.ndarray,
    *,
    seed: int = 0,
    n_proposal: int | None = None,
    df: float = 4.0,
) -> LogMarginal:
    """
    Importance-sampling estimate with a moment-matched multivariate-t
    proposal (heavier tails than the posterior).
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    n, d = samples.shape
    n2 = int(n_proposal or n)
    mean, cov, _ = _gaussian_fit(samples)
    shape = cov * (df - 2.0) / df
    proposal = stats.multivariate_t(loc=mean, shape=shape, df=df, seed=np.random.default_rng(seed))
    draws = np.atleast_2d(proposal.rvs(size=n2)).reshape(n2, d)
    logw = _eval_kernel(log_kernel, draws) - np.atleast_1d(proposal.logpdf(draws))
    logml = _log_mean_exp(logw)
    if not math.isfinite(logml):
        raise EstimatorError("importance sampling produced a non-finite estimate")
    w = np.exp(logw - logml)
    se = float(np.std(w, ddof=1) / math.sqrt(n2))
    return LogMarginal(logml, se, 1, "importance")


@dataclass(frozen=True)
class ModelEvidence:
    """Decimal-log marginal likelihood of one model."""

    model_id: str
    log10_marginal: float
    estimator: str
    mc_se: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.log10_marginal):
            raise ValueError("log10_marginal must be finite")
        if not self.mc_se >= 0:
            raise ValueError("mc_se must be non-negative")

    def to_dict(self) -> dict[str, Any]:
        return {
            "model_id": self.model_id,
            "log10_marginal": self.log10_marginal,
            "estimator": self.estimator,
            "mc_se": self.mc_se,
        }


def estimate_log_marginal(
    y: ExcessReturnSeries | Any,
    kind: Mechanism | str,
    prior: PriorSpec | None,
    chain: PosteriorChain,
    method: str = "bridge",
    *,
    seed: int = 0,
    n_proposal: int | None = None,
    init_policy: InitPolicy = "sample_variance",
) -> ModelEvidence:
    """
    Estimate ``log10 p(y | M)`` from a posterior chain of model ``kind``.

    ``method`` is ``"bridge"`` (default) or ``"importance"``.  Both work on
    the unconstrained scale with the log-Jacobian in the kernel.
    """
    posterior = GarchMPosterior(y, kind, prior, init_policy)
    if chain.kind is not posterior.kind:
        raise ValueError(f"chain is for {chain.kind.value}, not {posterior.kind.value}")
    if chain.unconstrained is not None:
        xs = chain.unconstrained
    else:
        xs = np.array([posterior.to_unconstrained(t) for t in chain.draws])
    if method == "bridge":
        logjac = np.array([posterior.from_unconstrained(x)[1] for x in xs])
        result = bridge_sampling(
            posterior.log_kernel, xs, seed=seed, n_proposal=n_proposal,
            log_kernel_samples=chain.log_posterior + logjac,
        )
    elif method == "importance":
        result = importance_sampling(posterior.log_kernel, xs, seed=seed, n_proposal=n_proposal)
    else:
        raise ValueError(f"unknown evidence method {method!r}")
    return ModelEvidence(
        model_id=posterior.kind.model_id,
        log10_marginal=result.log_marginal / LN10,
        estimator=result.method,
        mc_se=result.mc_se / LN10,
    )


@dataclass(frozen=True)
class ModelComparison:
    entries: tuple[ModelEvidence, ...]
    prior_probs: tuple[float, ...]
    posterior_probs: tuple[float, ...]

    @property
    def model_ids(self) -> tuple[str, ...]:
        return tuple(e.model_id for e in self.entries)

    def probability(self, model_id: str) -> float:
        return self.posterior_probs[self.model_ids.index(model_id)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "models": list(self.model_ids),
            "evidence": [e.to_dict() for e in self.entries],
            "prior_probs": list(self.prior_probs),
            "posterior_probs": list(self.posterior_probs),
        }


def posterior_model_probs(
    evidence: Sequence[ModelEvidence],
    prior_probs: Sequence[float] | None = None,
) -> ModelComparison:
    """
    ``P(M_i | y) = prior_i 10^(L_i - max L) / sum_k prior_k 10^(L_k - max L)``.

    Equal prior probabilities are used when ``prior_probs`` is omitted.
    """
    evidence = tuple(evidence)
    if not evidence:
        raise ValueError("no models to compare")
    if prior_probs is None:
        prior = np.full(len(evidence), 1.0 / len(evidence))
    else:
        prior = np.asarray(prior_probs, dtype=float)
        if prior.shape != (len(evidence),):
            raise ValueError("prior_probs must align with the evidence list")
        if np.any(prior < 0) or abs(prior.sum() - 1.0) > 1e-12:
            raise ValueError("prior_probs must be non-negative and sum to 1")
    logs = np.array([e.log10_marginal for e in evidence])
    with np.errstate(divide="ignore"):
        log_w = np.log(prior) + (logs - logs.max()) * LN10
    post = np.exp(log_w - special.logsumexp(log_w))
    return ModelComparison(
        entries=evidence,
        prior_probs=tuple(float(p) for p in prior),
        posterior_probs=tuple(float(p) for p in post),
    )


def comparison_report(
    evidence: Sequence[ModelEvidence],
    prob_positive: Mapping[str, float] | None = None,
    prior_probs: Sequence[float] | None = None,
) -> dict[str, Any]:
    """
    Assemble the comparison table: one column per model (skewed models
    first, symmetric last) and rows for log10 evidence, posterior
    probabilities over all models, over the skewed models only, and the
    posterior probability of a positive risk-aversion coefficient.
    """
    evidence = list(evidence)
    priors = [None] * len(evidence) if prior_probs is None else list(prior_probs)
    if len(priors) != len(evidence):
        raise ValueError("prior_probs must align with the evidence list")
    order = {mid: i for i, mid in enumerate(TABLE_ORDER)}
    pairs = sorted(zip(evidence, priors), key=lambda ep: order.get(ep[0].model_id, len(order)))
    evidence = [e for e, _ in pairs]
    full = posterior_model_probs(evidence, None if prior_probs is None else [p for _, p in pairs])
    skewed_probs: dict[str, float | None] = {e.model_id: None for e in evidence}
    skewed = [(e, p) for e, p in pairs if e.model_id != "M0"]
    if skewed:
        sub_prior = None
        if prior_probs is not None:
            w = np.array([p for _, p in skewed], dtype=float)
            sub_prior = w / w.sum()
        sub = posterior_model_probs([e for e, _ in skewed], sub_prior)
        skewed_probs.update(zip(sub.model_ids, sub.posterior_probs))
    prob_positive = dict(prob_positive or {})
    models = [e.model_id for e in evidence]
    return {
        "models": models,
        "rows": {
            "log10_marginal": {e.model_id: e.log10_marginal for e in evidence},
            "log10_marginal_mc_se": {e.model_id: e.mc_se for e in evidence},
            "posterior_prob_all": dict(zip(full.model_ids, full.posterior_probs)),
            "posterior_prob_skewed": skewed_probs,
            "prob_positive": {m: prob_positive.get(m) for m in models},
        },
        "prior_probs": dict(zip(full.model_ids, full.prior_probs)),
        "estimators": {e.model_id: e.estimator for e in evidence},
    }


def write_report(report: Mapping[str, Any], directory: str | os.PathLike, extra: Mapping[str, Any] | None = None) -> None:
    """Write ``comparison.json`` and ``comparison.csv`` into ``directory``."""
    os.makedirs(directory, exist_ok=True)
    payload = dict(report)
    if extra:
        payload.update(extra)
    with open(os.path.join(directory, "comparison.json"), "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    models = report["models"]
    with open(os.path.join(directory, "comparison.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["quantity", *models])
        for name, row in report["rows"].items():
            writer.writerow([name, *("" if row[m] is None else repr(float(row[m])) for m in models)])

